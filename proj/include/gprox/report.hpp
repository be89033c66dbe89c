#pragma once

// CSV and JSON serialization of query results. Doubles are written in
// shortest round-trip form so outputs are byte-stable.

#include "gprox/commute_column.hpp"
#include "gprox/katz_push.hpp"
#include "gprox/pairwise.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace gprox {

std::string format_double(double value);

/// iter,lower,upper[,cg_estimate]
void write_trace_csv(std::ostream& out, const BoundsTrace& trace,
                     const BaselineResult* baseline = nullptr);
nlohmann::json trace_json(const Graph& g, const BoundsTrace& trace,
                          const BaselineResult* baseline = nullptr);

/// vertex,score sorted by descending score (ties by vertex), external ids.
void write_katz_column_csv(std::ostream& out, const Graph& g, const KatzColumn& column);
nlohmann::json push_stats_json(const PushStats& stats);

/// vertex,score,solve_part,diag_part in vertex order, external ids.
void write_commute_column_csv(std::ostream& out, const Graph& g, const CommuteColumn& column);

nlohmann::json summary_json(const GraphSummary& summary);

/// internal,original
void write_id_map_csv(std::ostream& out, const Graph& g);

}  // namespace gprox

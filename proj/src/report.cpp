#include "gprox/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace gprox {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const BoundsTrace& trace, const BaselineResult* baseline) {
  out << "iter,lower,upper" << (baseline ? ",cg_estimate" : "") << '\n';
  const std::size_t rows = std::max(trace.rows.size(), baseline ? baseline->estimates.size() : 0);
  for (std::size_t k = 0; k < rows; ++k) {
    out << k + 1 << ',';
    if (k < trace.rows.size())
      out << format_double(trace.rows[k].lower) << ',' << format_double(trace.rows[k].upper);
    else
      out << ',';
    if (baseline) {
      out << ',';
      if (k < baseline->estimates.size()) out << format_double(baseline->estimates[k]);
    }
    out << '\n';
  }
}

nlohmann::json trace_json(const Graph& g, const BoundsTrace& trace, const BaselineResult* baseline) {
  nlohmann::json j;
  j["kind"] = to_string(trace.kind);
  j["i"] = g.original_id(trace.i);
  j["j"] = g.original_id(trace.j);
  j["iterations"] = trace.rows.size();
  j["final_lower"] = trace.final_lower;
  j["final_upper"] = trace.final_upper;
  j["raw_lower"] = trace.raw_lower();
  j["raw_upper"] = trace.raw_upper();
  j["scale"] = trace.scale;
  j["matvecs"] = trace.matvecs;
  j["converged"] = trace.converged;
  j["oracle_fallback_steps"] = trace.oracle_fallback_steps;
  if (baseline) {
    j["cg"] = {{"estimate", baseline->estimate},
               {"matvecs", baseline->matvecs},
               {"converged", baseline->converged},
               {"performance_ratio",
                baseline->matvecs > 0
                    ? nlohmann::json(static_cast<double>(baseline->matvecs - trace.matvecs) /
                                     static_cast<double>(baseline->matvecs))
                    : nlohmann::json(nullptr)}};
  }
  return j;
}

void write_katz_column_csv(std::ostream& out, const Graph& g, const KatzColumn& column) {
  auto entries = column.entries;
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  out << "vertex,score\n";
  for (auto [v, score] : entries) out << g.original_id(v) << ',' << format_double(score) << '\n';
}

nlohmann::json push_stats_json(const PushStats& stats) {
  return {{"pushes", stats.pushes},
          {"edge_touches", stats.edge_touches},
          {"effective_matvecs", stats.effective_matvecs},
          {"touched_vertices", stats.touched_vertices}};
}

void write_commute_column_csv(std::ostream& out, const Graph& g, const CommuteColumn& column) {
  out << "vertex,score,solve_part,diag_part\n";
  for (Index v = 0; v < column.scores.size(); ++v)
    out << g.original_id(v) << ',' << format_double(column.scores[v]) << ','
        << format_double(column.solve_part[v]) << ',' << format_double(column.diag_part[v]) << '\n';
}

nlohmann::json summary_json(const GraphSummary& s) {
  return {{"n", s.n},
          {"m", s.m},
          {"avg_degree", s.avg_degree},
          {"max_degree", s.max_degree},
          {"volume", s.volume},
          {"components_discarded", s.components_discarded}};
}

void write_id_map_csv(std::ostream& out, const Graph& g) {
  out << "internal,original\n";
  for (Index v = 0; v < g.num_vertices(); ++v) out << v << ',' << g.original_id(v) << '\n';
}

}  // namespace gprox

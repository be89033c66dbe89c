#pragma once

#include "gprox/quadrature.hpp"
#include "gprox/solvers.hpp"

#include <string>
#include <vector>

namespace gprox {

enum class ScoreKind { commute, katz };

std::string to_string(ScoreKind kind);

struct BoundsRow {
  Index iteration;
  double lower;
  double upper;
};

/// Per-iteration bounds of one pairwise query.
///
/// Rows hold the reported score: commute time (Vol(G) times the quadratic
/// form) or the Katz score. `scale` is that factor, so `raw_*` recovers the
/// quadratic form itself. Convergence is judged on the raw gap.
struct BoundsTrace {
  ScoreKind kind = ScoreKind::commute;
  Index i = 0;
  Index j = 0;
  std::vector<BoundsRow> rows;
  double final_lower = 0.0;
  double final_upper = 0.0;
  double scale = 1.0;
  std::int64_t matvecs = 0;
  bool converged = false;
  Index oracle_fallback_steps = 0;

  double raw_lower() const noexcept { return final_lower / scale; }
  double raw_upper() const noexcept { return final_upper / scale; }
};

struct BoundsOptions {
  double lambda_lo = 1e-4;
  /// Upper spectrum bound; nonpositive means "use the operator 1-norm".
  double lambda_hi = 0.0;
  double tau = 1e-4;
  /// Nonpositive means min(n, 500).
  Index max_iter = 0;
};

/// Two-sided bounds on the commute time between i and j.
BoundsTrace commute_pairwise_bounds(const Graph& g, Index i, Index j,
                                    const BoundsOptions& options = {});

/// Two-sided bounds on the Katz score K_ij via the polarization identity.
BoundsTrace katz_pairwise_bounds(const Graph& g, double alpha, Index i, Index j,
                                 const BoundsOptions& options = {});

struct BaselineResult {
  double estimate = 0.0;
  std::int64_t matvecs = 0;
  std::vector<double> estimates;  // per CG iteration, in reported units
  bool converged = false;
};

/// CG on L~ x = e_i - e_j (commute) or (I - alpha A) x = e_j (Katz), probing
/// the pairwise value each iteration and stopping on either a small relative
/// change of that value or a small residual.
BaselineResult cg_pairwise_baseline(const Graph& g, ScoreKind kind, double alpha, Index i, Index j,
                                    double tau = 1e-4, Index max_iter = 0);

}  // namespace gprox

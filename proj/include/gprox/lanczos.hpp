#pragma once

#include "gprox/operators.hpp"

#include <deque>
#include <vector>

namespace gprox {

/// Rolling state of the symmetric Lanczos recurrence.
///
/// `window` holds up to `reorth_window` recent basis vectors (the current
/// one first) against which each new vector is re-orthogonalized. A window
/// of 0 gives the plain three-term recurrence.
struct LanczosState {
  Vector q_prev;
  Vector q_curr;
  double beta_prev = 0.0;
  Index step = 0;
  std::vector<double> alphas;
  std::vector<double> betas;
  bool breakdown = false;

  Index reorth_window = 0;
  std::deque<Vector> window;
};

/// Start a recurrence from `q` (normalized here; must be nonzero).
LanczosState lanczos_start(const Eigen::Ref<const Vector>& q, Index reorth_window = 0);

struct LanczosCoefficients {
  double alpha;
  double beta;
};

/// Relative threshold under which beta counts as an exact breakdown.
inline constexpr double kBreakdownTolerance = 1e-14;

/// One step: z = Z q, alpha = q'z, z -= alpha q + beta_prev q_prev,
/// beta = ||z||, q_next = z / beta. Consumes exactly one matvec. On breakdown
/// q_curr becomes zero and `state.breakdown` is set.
LanczosCoefficients lanczos_step(LinearOperator& op, LanczosState& state);

/// Z Q_k = Q_{k+1} T_{k+1,k}.
struct LanczosFactorization {
  MatrixX<double> basis;        // n x (k+1); last column is zero after breakdown
  MatrixX<double> tridiagonal;  // (k+1) x k
  std::vector<double> alphas;
  std::vector<double> betas;
  bool breakdown = false;

  Index steps() const noexcept { return static_cast<Index>(alphas.size()); }
  /// Square k x k leading block T_k.
  MatrixX<double> square_tridiagonal() const;
};

enum class Reorthogonalization { none, local, full };

/// k Lanczos steps, storing the basis. `local` uses a window of
/// `local_window` vectors; `full` orthogonalizes against every stored vector.
/// Stops early (with `breakdown` set) if the Krylov space is exhausted.
LanczosFactorization lanczos_run(LinearOperator& op, const Eigen::Ref<const Vector>& q, Index k,
                                 Reorthogonalization reorth = Reorthogonalization::none,
                                 Index local_window = 2);

}  // namespace gprox

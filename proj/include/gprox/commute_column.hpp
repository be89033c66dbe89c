#pragma once

#include "gprox/operators.hpp"

namespace gprox {

struct DiagSolveResult {
  Vector solution;
  Vector diag_estimate;
  Index iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  /// Number of times the recurrence was restarted after exhausting a Krylov
  /// space (full-length mode only).
  Index restarts = 0;
};

struct DiagSolveOptions {
  double tol = 1e-16;
  /// Nonpositive means n.
  Index max_iter = 0;
  /// Local reorthogonalization window.
  Index reorth_window = 2;
  /// Keep going after the solve converges until the basis spans the whole
  /// space (n steps), restarting on breakdown and orthogonalizing against
  /// every stored vector. Makes the diagonal exact up to rounding; meant for
  /// small systems.
  bool full_length = false;
};

/// Lanczos-based CG for Z x = rhs that also accumulates
/// diag(Z^{-1}) ~ sum_k w_k o w_k with W = V R^{-T} and T = R R^T.
///
/// Without full_length the run stops once ||rhs - Z x|| <= tol ||rhs|| and
/// the diagonal is a partial (under-)estimate. Throws IndefiniteError on a
/// nonpositive Cholesky pivot.
DiagSolveResult cg_lanczos_diag(LinearOperator& op, const Eigen::Ref<const Vector>& rhs,
                                const DiagSolveOptions& options = {});

struct CommuteColumn {
  Index source = 0;
  Vector scores;       // Vol(G) (g + x_i e - 2x)
  Vector solve_part;   // x ~ L+ e_i
  Vector diag_part;    // g ~ diag(L+)
  double volume = 1.0;
  DiagSolveResult solver;

  /// g + x_i e - 2x without the Vol(G) factor; same ranking as `scores`.
  Vector unscaled() const { return scores / volume; }
};

struct CommuteColumnOptions {
  double tol = 1e-16;
  Index max_iter = 0;
  Index reorth_window = 2;
  bool full_length = false;
  /// Off only for A/B checks; the unpreconditioned system converges slower.
  bool preconditioned = true;
};

/// Approximate column i of the commute-time matrix.
CommuteColumn commute_column(const Graph& g, Index i, const CommuteColumnOptions& options = {});

/// 1/d_i + 1/d_v for v != i, and 0 at i.
Vector inverse_degree_heuristic(const Graph& g, Index i);

}  // namespace gprox

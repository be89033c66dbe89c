#pragma once

#include "gprox/operators.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace gprox {

struct SolveReport {
  Vector solution;
  Index iterations = 0;
  std::int64_t matvecs = 0;
  std::vector<double> residual_history;  // ||b - Z x_k||_2, starting at k = 0
  std::vector<double> probe_history;     // probe(x_k) for k >= 1, when a probe is set
  bool converged = false;
};

/// Scalar functional of the iterate, e.g. x -> (e_i - e_j)' x.
using Probe = std::function<double(const Vector&)>;

/// Conjugate gradient from x0 = 0.
///
/// Without a probe it stops when ||r_k|| <= tol ||b||. With a probe it also
/// stops when |p_k - p_{k-1}| < tol |p_k| (checked only while p_k != 0).
/// Throws IndefiniteError if a search direction has p'Zp <= 0.
SolveReport conjugate_gradient(LinearOperator& op, const Eigen::Ref<const Vector>& b, double tol,
                               Index max_iter, const Probe& probe = {});

struct ReferenceOptions {
  Index dense_cutoff = 2000;
  double iterative_tol = 1e-12;
};

/// Ground-truth solve: dense Cholesky of the materialized operator for
/// n <= dense_cutoff, otherwise CG to 1e-12 with 4n iterations. Throws
/// ConvergenceError rather than return an unconverged answer.
Vector reference_solve(LinearOperator& op, const Eigen::Ref<const Vector>& b,
                       const ReferenceOptions& options = {});

/// Dense copy of an operator (n matvecs).
MatrixX<double> materialize(LinearOperator& op);

struct DenseReference {
  MatrixX<double> katz;      // (I - alpha A)^{-1} - I
  MatrixX<double> commute;   // Vol(G) (L+_ii - 2 L+_ij + L+_jj)
  MatrixX<double> pseudo_inverse;
};

inline constexpr Index kDenseCutoff = 2000;

/// Dense Katz, commute-time and pseudo-inverse matrices for small graphs.
/// Pass alpha <= 0 to skip the Katz matrix.
DenseReference dense_reference_matrices(const Graph& g, double alpha);

}  // namespace gprox

#pragma once

#include "gprox/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace gprox {

/// A matrix-free symmetric operator with a matvec counter.
///
/// Operators built from a Graph keep a reference to it; the graph must
/// outlive the operator. Each query should own its operator so the counter
/// measures that query alone.
class LinearOperator {
public:
  using ApplyFn = std::function<void(const Eigen::Ref<const Vector>&, Eigen::Ref<Vector>)>;

  LinearOperator(Index dimension, ApplyFn apply) : dimension_(dimension), apply_(std::move(apply)) {}

  Index dimension() const noexcept { return dimension_; }

  void apply(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
    ++matvecs_;
    apply_(x, y);
  }

  Vector operator()(const Eigen::Ref<const Vector>& x) {
    Vector y(dimension_);
    apply(x, y);
    return y;
  }

  std::int64_t matvec_count() const noexcept { return matvecs_; }
  void reset_count() noexcept { matvecs_ = 0; }

private:
  Index dimension_;
  ApplyFn apply_;
  std::int64_t matvecs_ = 0;
};

/// (I - alpha A) x.
LinearOperator katz_operator(const Graph& g, double alpha);

/// (L + ee^T/n) x, symmetric positive definite on a connected graph.
LinearOperator adjusted_laplacian_operator(const Graph& g);

/// D^{-1/2} (L + ee^T/n) D^{-1/2} x.
LinearOperator preconditioned_laplacian_operator(const Graph& g);

/// Wraps a dense symmetric matrix; used by tests and oracles.
LinearOperator dense_operator(MatrixX<double> matrix);

enum class OperatorKind { katz, laplacian };

/// Exact 1-norm (max absolute column sum) of I - alpha A or of L + ee^T/n.
double one_norm(OperatorKind kind, const Graph& g, double alpha = 0.0);

/// Largest eigenvalue of A (equal to ||A||_2 for a nonnegative symmetric A).
///
/// Runs the Lanczos recurrence on A from a seeded positive start vector and
/// stops once the Ritz residual of the top Ritz value falls below
/// `tol * theta`. Throws ConvergenceError, carrying the best estimate, after
/// `max_iter` steps.
double spectral_norm_estimate(const Graph& g, double tol = 1e-10, Index max_iter = 1000,
                              std::uint64_t seed = 42);

/// alpha = 1 / (||A||_2 + 1), the near-indefinite damping used for stress runs.
double hard_alpha(double spectral_norm);

}  // namespace gprox

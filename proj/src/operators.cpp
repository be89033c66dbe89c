#include "gprox/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace gprox {

LinearOperator katz_operator(const Graph& g, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("Katz damping alpha must be positive");
  return LinearOperator(g.num_vertices(), [&g, alpha](const Eigen::Ref<const Vector>& x,
                                                      Eigen::Ref<Vector> y) {
    g.adjacency_times(x, y);
    y = x - alpha * y;
  });
}

LinearOperator adjusted_laplacian_operator(const Graph& g) {
  return LinearOperator(g.num_vertices(), [&g](const Eigen::Ref<const Vector>& x,
                                               Eigen::Ref<Vector> y) {
    g.adjacency_times(x, y);
    y = g.degrees().cwiseProduct(x) - y;
    y.array() += x.mean();
  });
}

LinearOperator preconditioned_laplacian_operator(const Graph& g) {
  Vector inv_sqrt_degree = g.degrees().cwiseSqrt().cwiseInverse();
  return LinearOperator(g.num_vertices(), [&g, scale = std::move(inv_sqrt_degree)](
                                              const Eigen::Ref<const Vector>& x,
                                              Eigen::Ref<Vector> y) {
    Vector scaled = scale.cwiseProduct(x);
    g.adjacency_times(scaled, y);
    y = g.degrees().cwiseProduct(scaled) - y;
    y.array() += scaled.mean();
    y = scale.cwiseProduct(y);
  });
}

LinearOperator dense_operator(MatrixX<double> matrix) {
  const Index n = matrix.rows();
  return LinearOperator(n, [m = std::move(matrix)](const Eigen::Ref<const Vector>& x,
                                                   Eigen::Ref<Vector> y) { y.noalias() = m * x; });
}

double one_norm(OperatorKind kind, const Graph& g, double alpha) {
  const double max_degree = static_cast<double>(g.max_degree());
  if (kind == OperatorKind::katz) return 1.0 + alpha * max_degree;

  // Column v of L + ee^T/n: diagonal d_v + 1/n, d_v entries -1 + 1/n, and
  // n - 1 - d_v entries 1/n. Every term is increasing in d_v for n >= 2.
  const double n = static_cast<double>(g.num_vertices());
  const double d = max_degree;
  return (d + 1.0 / n) + d * std::abs(1.0 / n - 1.0) + (n - 1.0 - d) / n;
}

double spectral_norm_estimate(const Graph& g, double tol, Index max_iter, std::uint64_t seed) {
  const Index n = g.num_vertices();
  std::mt19937_64 rng(seed);
  Vector q(n);
  for (Index v = 0; v < n; ++v) q[v] = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  q.normalize();

  Vector q_prev = Vector::Zero(n), z(n);
  std::vector<double> alphas, betas;
  double beta_prev = 0.0, best = 0.0;
  const Index steps = std::min(max_iter, n);
  for (Index k = 0; k < steps; ++k) {
    g.adjacency_times(q, z);
    const double a = q.dot(z);
    z -= a * q + beta_prev * q_prev;
    const double b = z.norm();
    alphas.push_back(a);
    betas.push_back(b);

    const Index m = static_cast<Index>(alphas.size());
    const bool breakdown = b <= 1e-14 * std::abs(a) + 1e-300;
    if (m > 64 && m % 16 != 0 && !breakdown && k + 1 < steps) {
      q_prev.swap(q);
      q = z / b;
      beta_prev = b;
      continue;
    }
    Eigen::SelfAdjointEigenSolver<MatrixX<double>> ritz;
    Vector diag = Eigen::Map<const Vector>(alphas.data(), m);
    Vector sub = Eigen::Map<const Vector>(betas.data(), m - 1);
    ritz.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = ritz.eigenvalues()[m - 1];
    best = theta;
    const double ritz_residual = b * std::abs(ritz.eigenvectors()(m - 1, m - 1));
    if (ritz_residual <= tol * std::abs(theta) || breakdown) return theta;

    q_prev.swap(q);
    q = z / b;
    beta_prev = b;
  }
  if (steps == n) return best;  // the Krylov space is exhausted
  throw ConvergenceError("spectral norm estimate did not converge", best);
}

double hard_alpha(double spectral_norm) { return 1.0 / (spectral_norm + 1.0); }

}  // namespace gprox

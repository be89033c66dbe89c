#pragma once

// Brute-force ground truth for small graphs. Nothing here goes through the
// library's operators or solvers; matrices are assembled from neighbor lists
// and inverted densely.

#include "gprox/graph.hpp"

#include <Eigen/Dense>

namespace gprox::testing {

inline MatrixX<double> dense_adjacency(const Graph& g) {
  const Index n = g.num_vertices();
  MatrixX<double> a = MatrixX<double>::Zero(n, n);
  for (Index v = 0; v < n; ++v)
    for (Index u : g.neighbors(v)) a(v, u) = 1.0;
  return a;
}

inline MatrixX<double> dense_laplacian(const Graph& g) {
  MatrixX<double> a = dense_adjacency(g);
  MatrixX<double> l = -a;
  l.diagonal() += a.rowwise().sum();
  return l;
}

/// (I - alpha A)^{-1} - I.
inline MatrixX<double> katz_matrix(const Graph& g, double alpha) {
  const Index n = g.num_vertices();
  MatrixX<double> z = MatrixX<double>::Identity(n, n) - alpha * dense_adjacency(g);
  return z.partialPivLu().inverse() - MatrixX<double>::Identity(n, n);
}

/// Expected number of steps for a random walk from every vertex to first
/// reach `target`: h(target) = 0, h(v) = 1 + mean of h over neighbors.
inline Vector hitting_times_to(const Graph& g, Index target) {
  const Index n = g.num_vertices();
  MatrixX<double> m = MatrixX<double>::Zero(n, n);
  Vector rhs = Vector::Ones(n);
  for (Index v = 0; v < n; ++v) {
    m(v, v) = 1.0;
    if (v == target) {
      rhs[v] = 0.0;
      continue;
    }
    const double p = 1.0 / static_cast<double>(g.degree(v));
    for (Index u : g.neighbors(v)) m(v, u) -= p;
  }
  return m.partialPivLu().solve(rhs);
}

/// Commute time H(i, j) + H(j, i) by first-transition analysis.
inline double commute_time(const Graph& g, Index i, Index j) {
  return hitting_times_to(g, j)[i] + hitting_times_to(g, i)[j];
}

/// Column i of the commute-time matrix, by first-transition analysis.
inline Vector commute_column_oracle(const Graph& g, Index i) {
  const Index n = g.num_vertices();
  const Vector to_i = hitting_times_to(g, i);
  Vector out(n);
  for (Index v = 0; v < n; ++v) out[v] = v == i ? 0.0 : to_i[v] + hitting_times_to(g, v)[i];
  return out;
}

/// Moore-Penrose pseudo-inverse of L from its eigendecomposition.
inline MatrixX<double> laplacian_pinv(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<MatrixX<double>> es(dense_laplacian(g));
  Vector inv = es.eigenvalues();
  for (Index k = 0; k < inv.size(); ++k) inv[k] = inv[k] > 1e-9 ? 1.0 / inv[k] : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace gprox::testing

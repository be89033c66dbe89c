#pragma once

// Graph fixtures and random generators for tests and the acceptance suite.

#include "gprox/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace gprox::testing {

inline Graph from_edges(const std::vector<std::pair<Index, Index>>& edges) {
  RawEdges raw;
  raw.edges = edges;
  return preprocess(raw);
}

inline Graph single_edge() { return from_edges({{0, 1}}); }
inline Graph triangle() { return from_edges({{0, 1}, {1, 2}, {0, 2}}); }
inline Graph path3() { return from_edges({{0, 1}, {1, 2}}); }

/// K_{1,leaves} with the center at vertex 0.
inline Graph star(Index leaves) {
  std::vector<std::pair<Index, Index>> e;
  for (Index v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return from_edges(e);
}

inline Graph cycle(Index n) {
  std::vector<std::pair<Index, Index>> e;
  for (Index v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return from_edges(e);
}

/// G(n, p) plus a random spanning path so the result is connected on all n
/// vertices.
inline Graph erdos_renyi(Index n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<Index, Index>> e;
  for (Index k = 1; k < n; ++k) e.emplace_back(perm[static_cast<std::size_t>(k - 1)], perm[static_cast<std::size_t>(k)]);
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (coin(rng) < p) e.emplace_back(u, v);
  return from_edges(e);
}

/// Barabasi-Albert preferential attachment: each new vertex links to
/// `m` distinct earlier vertices chosen proportionally to degree.
inline Graph preferential_attachment(Index n, Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Index, Index>> e;
  std::vector<Index> endpoints;  // each vertex once per incident edge
  for (Index u = 0; u <= m; ++u)
    for (Index v = u + 1; v <= m; ++v) {
      e.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  for (Index v = m + 1; v < n; ++v) {
    std::set<Index> targets;
    while (static_cast<Index>(targets.size()) < m) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      targets.insert(endpoints[pick(rng)]);
    }
    for (Index t : targets) {
      e.emplace_back(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return from_edges(e);
}

/// Random symmetric positive definite matrix with spectrum in [lo, hi].
inline MatrixX<double> random_spd(Index n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(lo, hi);
  MatrixX<double> g(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) g(r, c) = normal(rng);
  Eigen::HouseholderQR<MatrixX<double>> qr(g);
  MatrixX<double> q = qr.householderQ();
  Vector eig(n);
  for (Index k = 0; k < n; ++k) eig[k] = uniform(rng);
  eig[0] = lo;
  eig[n - 1] = hi;
  MatrixX<double> m = q * eig.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace gprox::testing

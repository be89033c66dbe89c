#include "gprox/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace gprox {

TopKSet top_k(const Eigen::Ref<const Vector>& scores, Index k, RankDirection direction,
              Index source) {
  if (k < 0) throw ParameterError("k must be nonnegative");
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(scores.size()));
  for (Index v = 0; v < scores.size(); ++v)
    if (v != source) order.push_back(v);
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  auto better = [&](Index a, Index b) {
    if (scores[a] != scores[b])
      return direction == RankDirection::largest ? scores[a] > scores[b] : scores[a] < scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
  order.resize(take);

  TopKSet out;
  out.k = k;
  out.direction = direction;
  out.vertices = order;
  for (Index v : order) out.scores.push_back(scores[v]);
  return out;
}

double precision_at_k(const TopKSet& approx, const TopKSet& exact) {
  if (approx.k != exact.k || approx.direction != exact.direction)
    throw ParameterError("precision@k needs sets with the same k and direction");
  if (exact.vertices.empty()) throw ParameterError("precision@k of an empty set");
  std::unordered_set<Index> truth(exact.vertices.begin(), exact.vertices.end());
  std::size_t hits = 0;
  for (Index v : approx.vertices) hits += truth.count(v);
  return static_cast<double>(hits) / static_cast<double>(exact.vertices.size());
}

std::vector<RankingComparison> compare_rankings(const Eigen::Ref<const Vector>& approx,
                                                const Eigen::Ref<const Vector>& exact,
                                                const std::vector<Index>& ks,
                                                RankDirection direction, Index source,
                                                double tie_tolerance) {
  if (approx.size() != exact.size()) throw ParameterError("score vectors differ in length");
  const Index candidates = exact.size() - (source >= 0 ? 1 : 0);
  std::vector<RankingComparison> out;
  for (Index k : ks) {
    const Index kk = std::min(k, candidates);
    if (kk < 1) continue;
    const TopKSet truth = top_k(exact, kk, direction, source);
    const TopKSet guess = top_k(approx, kk, direction, source);
    RankingComparison c;
    c.k = kk;
    c.precision = precision_at_k(guess, truth);
    if (kk >= 2) {
      Vector a(kk), e(kk);
      for (Index p = 0; p < kk; ++p) {
        a[p] = approx[truth.vertices[static_cast<std::size_t>(p)]];
        e[p] = exact[truth.vertices[static_cast<std::size_t>(p)]];
      }
      c.tau = kendall_tau_b(a, e);
    }
    if (kk < candidates) {
      const TopKSet next = top_k(exact, kk + 1, direction, source);
      c.boundary_tie = std::abs(next.scores[static_cast<std::size_t>(kk)] -
                                next.scores[static_cast<std::size_t>(kk - 1)]) <= tie_tolerance;
    }
    out.push_back(c);
  }
  return out;
}

double performance_ratio(std::int64_t k_cg, std::int64_t k_alg) {
  if (k_cg < 1) throw ParameterError("performance ratio needs k_cg >= 1");
  return static_cast<double>(k_cg - k_alg) / static_cast<double>(k_cg);
}

std::vector<Index> degree_ranks(Index n, RankLadder ladder) {
  static constexpr Index dense_steps[] = {1, 2, 3, 4, 5};
  static constexpr Index sparse_steps[] = {1, 5};
  std::vector<Index> ranks;
  auto add = [&](Index r) {
    if (r <= n && (ranks.empty() || ranks.back() < r)) ranks.push_back(r);
  };
  if (ladder == RankLadder::dense) {
    // 1..5 once, then 10..50, 100..500, ...
    for (Index s : dense_steps) add(s);
    for (Index decade = 10; decade <= n; decade *= 10)
      for (Index s : dense_steps) add(s * decade);
  } else {
    for (Index decade = 1; decade <= n; decade *= 10)
      for (Index s : sparse_steps) add(s * decade);
  }
  return ranks;
}

std::vector<Index> degree_order(const Graph& g) {
  std::vector<Index> order(static_cast<std::size_t>(g.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return g.degree(a) > g.degree(b); });
  return order;
}

std::vector<Index> seeded_permutation(Index n, std::uint64_t seed) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (Index k = n - 1; k > 0; --k) {
    // Unbiased draw in [0, k] by rejection; std::uniform_int_distribution
    // differs between standard libraries.
    const std::uint64_t bound = static_cast<std::uint64_t>(k) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do draw = rng();
    while (draw >= limit);
    std::swap(perm[static_cast<std::size_t>(k)], perm[draw % bound]);
  }
  return perm;
}

VertexSample sample_vertex_pairs(const Graph& g, SampleScheme scheme, Index count,
                                 std::uint64_t seed, RankLadder ladder) {
  VertexSample out;
  const Index n = g.num_vertices();
  if (scheme == SampleScheme::random) {
    const std::vector<Index> perm = seeded_permutation(n, seed);
    const Index available = n / 2;
    if (count > available)
      out.warnings.push_back("requested " + std::to_string(count) + " random pairs but only " +
                             std::to_string(available) + " exist");
    for (Index p = 0; p < std::min(count, available); ++p) {
      out.pairs.emplace_back(perm[2 * p], perm[2 * p + 1]);
      out.vertices.push_back(perm[2 * p]);
      out.vertices.push_back(perm[2 * p + 1]);
    }
    return out;
  }

  const std::vector<Index> order = degree_order(g);
  for (Index r : degree_ranks(n, ladder)) out.vertices.push_back(order[static_cast<std::size_t>(r - 1)]);
  const Index m = static_cast<Index>(out.vertices.size());
  const Index available = m * (m - 1) / 2;
  if (count > available)
    out.warnings.push_back("requested " + std::to_string(count) + " degree-correlated pairs but only " +
                           std::to_string(available) + " exist");
  // b outer so that a prefix of the list only involves the top-ranked vertices
  for (Index b = 1; b < m; ++b)
    for (Index a = 0; a < b; ++a)
      if (static_cast<Index>(out.pairs.size()) < count)
        out.pairs.emplace_back(out.vertices[static_cast<std::size_t>(a)], out.vertices[static_cast<std::size_t>(b)]);
  return out;
}

VertexSample sample_vertices(const Graph& g, SampleScheme scheme, Index count, std::uint64_t seed,
                             RankLadder ladder) {
  VertexSample out;
  const Index n = g.num_vertices();
  if (scheme == SampleScheme::random) {
    const std::vector<Index> perm = seeded_permutation(n, seed);
    if (count > n) out.warnings.push_back("requested more vertices than the graph has");
    out.vertices.assign(perm.begin(), perm.begin() + std::min(count, n));
    return out;
  }
  const std::vector<Index> order = degree_order(g);
  for (Index r : degree_ranks(n, ladder)) {
    if (static_cast<Index>(out.vertices.size()) >= count) break;
    out.vertices.push_back(order[static_cast<std::size_t>(r - 1)]);
  }
  return out;
}

double nearest_rank_percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("percentile of an empty sample");
  if (!(p > 0.0) || p > 100.0) throw ParameterError("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace gprox

#pragma once

#include "gprox/graph.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gprox {

/// (sum v_j^2)^2 / sum v_j^4, the effective number of nonzeros of v.
template <typename Derived>
double participation_ratio(const Eigen::MatrixBase<Derived>& v) {
  const auto squares = v.derived().template cast<double>().array().square();
  const double fourth = squares.square().sum();
  if (!(fourth > 0.0)) throw ParameterError("participation ratio of a zero vector");
  const double second = squares.sum();
  return second * second / fourth;
}

enum class RankDirection { largest, smallest };

struct TopKSet {
  Index k = 0;
  std::vector<Index> vertices;
  std::vector<double> scores;
  RankDirection direction = RankDirection::largest;
};

/// The k best-scoring vertices other than `source` (pass -1 to keep all),
/// ties broken by smaller vertex id.
TopKSet top_k(const Eigen::Ref<const Vector>& scores, Index k, RankDirection direction,
              Index source = -1);

/// |S_approx intersect S_exact| / |S_exact|.
double precision_at_k(const TopKSet& approx, const TopKSet& exact);

struct KendallTau {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool defined = false;
};

/// Tie-adjusted Kendall tau-b between two equal-length score vectors.
/// Undefined (NaN, defined = false) when either side is constant.
template <typename DerivedA, typename DerivedB>
KendallTau kendall_tau_b(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const Index m = a.size();
  if (m != b.size() || m < 2) throw ParameterError("Kendall tau needs two vectors of equal length >= 2");
  std::int64_t concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (Index p = 0; p < m; ++p) {
    for (Index q = p + 1; q < m; ++q) {
      const double da = static_cast<double>(a[p]) - static_cast<double>(a[q]);
      const double db = static_cast<double>(b[p]) - static_cast<double>(b[q]);
      if (da == 0.0 && db == 0.0) continue;
      if (da == 0.0) {
        ++ties_a;
      } else if (db == 0.0) {
        ++ties_b;
      } else if ((da > 0.0) == (db > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n_a = static_cast<double>(concordant + discordant + ties_b);  // pairs untied in a
  const double n_b = static_cast<double>(concordant + discordant + ties_a);  // pairs untied in b
  KendallTau out;
  if (n_a == 0.0 || n_b == 0.0) return out;
  out.value = static_cast<double>(concordant - discordant) / std::sqrt(n_a * n_b);
  out.defined = true;
  return out;
}

struct RankingComparison {
  Index k = 0;
  double precision = 0.0;
  /// Kendall tau-b of the approximate scores against the exact ones, both
  /// restricted to the exact top-k set.
  KendallTau tau;
  /// The exact k-th and (k+1)-th scores are equal, so the exact set itself
  /// depends on tie-breaking.
  bool boundary_tie = false;
};

/// precision@k and Kendall tau for each k in `ks` (k larger than the
/// candidate count is clamped).
std::vector<RankingComparison> compare_rankings(const Eigen::Ref<const Vector>& approx,
                                                const Eigen::Ref<const Vector>& exact,
                                                const std::vector<Index>& ks,
                                                RankDirection direction, Index source = -1,
                                                double tie_tolerance = 0.0);

/// (k_cg - k_alg) / k_cg.
double performance_ratio(std::int64_t k_cg, std::int64_t k_alg);

enum class SampleScheme { random, degree_correlated };

/// Which degree-rank ladder to use for degree-correlated sampling:
/// 1,2,3,4,5,10,20,...,50,100,... or the sparser 1,5,10,50,100,...
enum class RankLadder { dense, sparse };

struct VertexSample {
  std::vector<Index> vertices;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<std::string> warnings;
};

/// 1-based ranks of the ladder that do not exceed n.
std::vector<Index> degree_ranks(Index n, RankLadder ladder);

/// Vertices sorted by decreasing degree, ties by id.
std::vector<Index> degree_order(const Graph& g);

/// Vertex pairs for pairwise experiments.
///
/// random: consecutive pairs of a seeded random permutation. Degree scheme:
/// the vertices at the ladder ranks of the degree order, and all pairs among
/// them, listed so that the first c(c-1)/2 pairs involve only the top c.
/// At most `count` pairs are returned; asking for more than exist adds a
/// warning.
VertexSample sample_vertex_pairs(const Graph& g, SampleScheme scheme, Index count,
                                 std::uint64_t seed, RankLadder ladder = RankLadder::dense);

/// Source vertices for column experiments: a permutation prefix, or the
/// ladder ranks of the degree order.
VertexSample sample_vertices(const Graph& g, SampleScheme scheme, Index count, std::uint64_t seed,
                             RankLadder ladder = RankLadder::dense);

/// Seeded Fisher-Yates permutation of 0..n-1; identical on every platform.
std::vector<Index> seeded_permutation(Index n, std::uint64_t seed);

/// Nearest-rank percentile, p in (0, 100].
double nearest_rank_percentile(std::vector<double> values, double p);

}  // namespace gprox

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gprox/eval.hpp"
#include "support/fixtures.hpp"

#include <set>

using namespace gprox;
namespace t = gprox::testing;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

TopKSet set_of(std::vector<Index> vertices) {
  TopKSet s;
  s.k = static_cast<Index>(vertices.size());
  s.vertices = std::move(vertices);
  return s;
}

}  // namespace

TEST_CASE("participation ratio") {
  CHECK(participation_ratio(Vector::Constant(7, 0.3)) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(participation_ratio(Vector::Unit(9, 4)) == 1.0);
  CHECK(participation_ratio(vec({1, 1, 0, 0})) == 2.0);
  CHECK_THROWS_AS(participation_ratio(Vector::Zero(3)), ParameterError);

  Vector v = vec({0.5, -2.0, 0.0, 3.0, 0.25});
  const double p = participation_ratio(v);
  CHECK(participation_ratio(Vector(-4.5 * v)) == doctest::Approx(p).epsilon(1e-12));
  CHECK(p >= 1.0);
  CHECK(p <= 4.0);
}

TEST_CASE("precision at k") {
  CHECK(precision_at_k(set_of({1, 2, 3}), set_of({3, 1, 2})) == 1.0);
  CHECK(precision_at_k(set_of({1, 2}), set_of({3, 4})) == 0.0);
  CHECK(precision_at_k(set_of({1, 2, 3, 9}), set_of({4, 3, 2, 1})) == 0.75);
  CHECK_THROWS_AS(precision_at_k(set_of({1, 2}), set_of({1, 2, 3})), ParameterError);
  auto smallest = set_of({1, 2});
  smallest.direction = RankDirection::smallest;
  CHECK_THROWS_AS(precision_at_k(set_of({1, 2}), smallest), ParameterError);
}

TEST_CASE("top k excludes the source and breaks ties by id") {
  Vector s = vec({9, 5, 7, 7, 1});
  auto top = top_k(s, 2, RankDirection::largest, 0);
  CHECK(top.vertices == std::vector<Index>{2, 3});
  auto low = top_k(s, 2, RankDirection::smallest, 4);
  CHECK(low.vertices == std::vector<Index>{1, 2});
  auto all = top_k(s, 10, RankDirection::largest);
  CHECK(all.vertices.size() == 5);
}

TEST_CASE("kendall tau b") {
  CHECK(kendall_tau_b(vec({1, 2, 3, 4}), vec({10, 20, 30, 40})).value == doctest::Approx(1.0));
  CHECK(kendall_tau_b(vec({1, 2, 3, 4}), vec({4, 3, 2, 1})).value == doctest::Approx(-1.0));
  CHECK(kendall_tau_b(vec({1, 2, 3, 4}), vec({1, 2, 4, 3})).value == doctest::Approx(2.0 / 3));

  // ties: brute force tau-b from its definition
  Vector a = vec({1, 1, 2, 3, 3});
  Vector b = vec({2, 1, 1, 3, 4});
  double nc = 0, nd = 0, ta = 0, tb = 0;
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) {
      double s = (a[p] - a[q]) * (b[p] - b[q]);
      if (s > 0) ++nc;
      if (s < 0) ++nd;
      if (a[p] == a[q]) ++ta;
      if (b[p] == b[q]) ++tb;
    }
  const double expected = (nc - nd) / std::sqrt((10 - ta) * (10 - tb));
  CHECK(kendall_tau_b(a, b).value == doctest::Approx(expected));

  Vector moved = (2.0 * a.array() + 7.0).matrix();
  CHECK(kendall_tau_b(moved, b).value == kendall_tau_b(a, b).value);

  auto flat = kendall_tau_b(vec({1, 1, 1}), vec({1, 2, 3}));
  CHECK_FALSE(flat.defined);
  CHECK(std::isnan(flat.value));
  CHECK_THROWS_AS(kendall_tau_b(vec({1}), vec({1})), ParameterError);
}

TEST_CASE("performance ratio") {
  CHECK(performance_ratio(10, 10) == 0.0);
  CHECK(performance_ratio(10, 0) == 1.0);
  CHECK(performance_ratio(10, 20) == -1.0);
  CHECK(performance_ratio(10, 30) == -2.0);
  CHECK_THROWS_AS(performance_ratio(0, 1), ParameterError);
}

TEST_CASE("degree ladders") {
  CHECK(degree_ranks(60, RankLadder::dense) == std::vector<Index>{1, 2, 3, 4, 5, 10, 20, 30, 40, 50});
  CHECK(degree_ranks(120, RankLadder::sparse) == std::vector<Index>{1, 5, 10, 50, 100});
}

TEST_CASE("degree-correlated sampling") {
  // degrees 5,4,3,2,1,1 on vertices 0..5
  auto g = t::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {2, 3}});
  auto s = sample_vertex_pairs(g, SampleScheme::degree_correlated, 3, 0);
  CHECK(s.vertices[0] == 0);
  CHECK(s.vertices[1] == 1);
  CHECK(s.vertices[2] == 2);
  CHECK(s.pairs == std::vector<std::pair<Index, Index>>{{0, 1}, {0, 2}, {1, 2}});
  auto many = sample_vertex_pairs(g, SampleScheme::degree_correlated, 100, 0);
  CHECK(many.pairs.size() == 10);
  CHECK_FALSE(many.warnings.empty());
}

TEST_CASE("random sampling") {
  auto g = t::cycle(4);
  auto s = sample_vertex_pairs(g, SampleScheme::random, 2, 99);
  REQUIRE(s.pairs.size() == 2);
  std::set<Index> seen{s.pairs[0].first, s.pairs[0].second, s.pairs[1].first, s.pairs[1].second};
  CHECK(seen.size() == 4);
  CHECK(s.warnings.empty());

  auto big = t::erdos_renyi(50, 0.1, 1);
  auto a = sample_vertex_pairs(big, SampleScheme::random, 20, 7);
  auto b = sample_vertex_pairs(big, SampleScheme::random, 20, 7);
  CHECK(a.pairs == b.pairs);
  auto c = sample_vertex_pairs(big, SampleScheme::random, 20, 8);
  CHECK(a.pairs != c.pairs);
  auto over = sample_vertex_pairs(big, SampleScheme::random, 40, 7);
  CHECK(over.pairs.size() == 25);
  CHECK_FALSE(over.warnings.empty());
}

TEST_CASE("seeded permutation is a fixed permutation") {
  auto p = seeded_permutation(10, 42);
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (Index k = 0; k < 10; ++k) CHECK(sorted[static_cast<std::size_t>(k)] == k);
  CHECK(p == seeded_permutation(10, 42));
}

TEST_CASE("nearest rank percentiles") {
  std::vector<double> v{15, 20, 35, 40, 50};
  CHECK(nearest_rank_percentile(v, 5) == 15);
  CHECK(nearest_rank_percentile(v, 30) == 20);
  CHECK(nearest_rank_percentile(v, 40) == 20);
  CHECK(nearest_rank_percentile(v, 50) == 35);
  CHECK(nearest_rank_percentile(v, 100) == 50);
  CHECK_THROWS_AS(nearest_rank_percentile({}, 50), ParameterError);
  CHECK_THROWS_AS(nearest_rank_percentile(v, 0), ParameterError);
}

TEST_CASE("ranking comparison") {
  Vector exact = vec({0, 9, 8, 7, 6, 5});
  Vector approx = vec({0, 9, 7, 8, 1, 5});
  auto r = compare_rankings(approx, exact, {2, 3, 4, 100}, RankDirection::largest, 0);
  REQUIRE(r.size() == 4);
  CHECK(r[0].precision == 0.5);
  CHECK(r[1].precision == 1.0);
  CHECK(r[1].tau.value == doctest::Approx(1.0 / 3));
  CHECK(r[2].precision == 0.75);
  CHECK(r[3].k == 5);
  CHECK_FALSE(r[0].boundary_tie);

  Vector tied = vec({0, 3, 2, 2, 1});
  auto t2 = compare_rankings(tied, tied, {2}, RankDirection::largest, 0);
  CHECK(t2[0].boundary_tie);
  auto low = compare_rankings(vec({0, 1, 2, 3}), vec({0, 1, 3, 2}), {1, 2}, RankDirection::smallest, 0);
  CHECK(low[0].precision == 1.0);
  CHECK(low[1].precision == 0.5);
}

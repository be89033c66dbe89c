#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gprox/graph.hpp"
#include "support/fixtures.hpp"

#include <sstream>

using namespace gprox;
using gprox::testing::from_edges;

namespace {

RawEdges parse(const std::string& text, Indexing indexing) {
  std::istringstream in(text);
  return load_edge_list(in, indexing);
}

void check_invariants(const Graph& g) {
  double volume = 0.0;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
    CHECK(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
    for (Index u : nbrs) {
      CHECK(u != v);
      auto back = g.neighbors(u);
      CHECK(std::binary_search(back.begin(), back.end(), v));
    }
    CHECK(g.degrees()[v] == static_cast<double>(g.degree(v)));
    volume += static_cast<double>(g.degree(v));
  }
  CHECK(volume == g.volume());
}

}  // namespace

TEST_CASE("edge lists parse with either indexing") {
  auto zero = parse("0 1\n1 2\n", Indexing::zero_based);
  CHECK(zero.edges == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});
  auto one = parse("1 2\n2 3\n", Indexing::one_based);
  CHECK(one.edges == zero.edges);
}

TEST_CASE("self loops survive parsing") {
  auto raw = parse("0 0\n0 1\n", Indexing::zero_based);
  CHECK(raw.edges == std::vector<std::pair<Index, Index>>{{0, 0}, {0, 1}});
}

TEST_CASE("comments, blanks and trailing weights are skipped") {
  auto raw = parse("# header\n% other\n\n0 1 3.5\n  1\t2\n", Indexing::zero_based);
  CHECK(raw.edges.size() == 2);
}

TEST_CASE("malformed lines report their line number") {
  try {
    parse("0 1\n0 x\n", Indexing::zero_based);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 1\n0 2\n0 -1\n", Indexing::zero_based), ParseError);
  CHECK_THROWS_AS(parse("0 1\n", Indexing::one_based), ParseError);
}

TEST_CASE("matrix market coordinate input") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n1 2\n2 3\n");
  auto raw = load_matrix_market(in);
  CHECK(raw.declared_n == 3);
  CHECK(raw.edges == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});

  std::istringstream bad("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 3\n");
  CHECK_THROWS_AS(load_matrix_market(bad), ParseError);
  std::istringstream array("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(load_matrix_market(array), ParseError);
  std::istringstream nobanner("3 3 1\n1 2\n");
  CHECK_THROWS_AS(load_matrix_market(nobanner), ParseError);
}

TEST_CASE("preprocess dedupes and strips loops") {
  RawEdges raw;
  raw.edges = {{0, 1}, {1, 0}, {1, 1}};
  Graph g = preprocess(raw);
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
  CHECK(g.volume() == 2.0);
  check_invariants(g);
}

TEST_CASE("equal components tie to the smallest original id") {
  Graph g = from_edges({{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}});
  CHECK(g.num_vertices() == 3);
  CHECK(g.original_id(0) == 0);
  CHECK(g.components_discarded() == 1);

  Graph swapped = from_edges({{10, 11}, {11, 12}, {10, 12}, {7, 20}, {20, 21}, {7, 21}});
  CHECK(swapped.original_id(0) == 7);
}

TEST_CASE("largest component wins and ids map both ways") {
  Graph g = from_edges({{100, 5}, {5, 42}, {42, 7}, {1, 2}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.components_discarded() == 1);
  // relabelled in increasing order of original id
  CHECK(g.original_id(0) == 5);
  CHECK(g.original_id(1) == 7);
  CHECK(g.original_id(2) == 42);
  CHECK(g.original_id(3) == 100);
  CHECK(g.internal_id(42) == 2);
  CHECK_FALSE(g.internal_id(1).has_value());
  check_invariants(g);
}

TEST_CASE("path degrees and volume") {
  Graph g = gprox::testing::path3();
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.volume() == 4.0);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(preprocess(RawEdges{}), Error);
  RawEdges loops;
  loops.edges = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(preprocess(loops), Error);
}

TEST_CASE("random graphs satisfy the structural invariants") {
  check_invariants(gprox::testing::erdos_renyi(80, 0.05, 3));
  check_invariants(gprox::testing::preferential_attachment(120, 2, 4));
}

TEST_CASE("adjacency product matches the sparse matrix") {
  Graph g = gprox::testing::preferential_attachment(60, 3, 9);
  Vector x = Vector::LinSpaced(g.num_vertices(), -1.0, 2.0);
  Vector y(g.num_vertices());
  g.adjacency_times(x, y);
  CHECK((y - g.adjacency_matrix() * x).norm() < 1e-12);
}

TEST_CASE("summary counts") {
  auto s = summarize(gprox::testing::single_edge());
  CHECK(s.n == 2);
  CHECK(s.m == 1);
  CHECK(s.avg_degree == 1.0);
  CHECK(s.max_degree == 1);
  CHECK(s.volume == 2.0);
}

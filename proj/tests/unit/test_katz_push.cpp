#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gprox/eval.hpp"
#include "gprox/katz_push.hpp"
#include "gprox/operators.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace gprox;
namespace t = gprox::testing;

TEST_CASE("sparse accumulator switches to dense") {
  SparseAccumulator acc(8);
  acc.at(5) += 1.5;
  acc.at(2) = -1.0;
  CHECK(acc.get(5) == 1.5);
  CHECK(acc.get(0) == 0.0);
  CHECK(acc.touched() == 2);
  CHECK_FALSE(acc.is_dense());
  acc.at(7) = 3.0;
  CHECK(acc.is_dense());
  CHECK(acc.touched() == 3);
  auto e = acc.entries();
  REQUIRE(e.size() == 3);
  CHECK(e[0].first == 2);
  CHECK(e[2].second == 3.0);
  CHECK(acc.to_dense()[5] == 1.5);
}

TEST_CASE("single edge closed form") {
  auto g = t::single_edge();
  PushOptions opt;
  opt.tau = 1e-10;
  auto col = katz_column_push(g, 0.5, 0, opt);
  CHECK(col.converged);
  Vector x = col.to_dense(2);
  CHECK(x[0] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(x[1] == doctest::Approx(2.0 / 3).epsilon(1e-9));
}

TEST_CASE("large tau pushes nothing") {
  auto g = t::triangle();
  PushOptions opt;
  opt.tau = 2.0;
  auto col = katz_column_push(g, 0.2, 0, opt);
  CHECK(col.stats.pushes == 0);
  CHECK(col.entries.empty());
  CHECK(col.to_dense(3).isZero());
}

TEST_CASE("star column against the dense inverse") {
  auto g = t::star(3);
  PushOptions opt;
  opt.tau = 1e-12;
  for (auto scaling : {PushScaling::residual, PushScaling::degree_scaled}) {
    opt.scaling = scaling;
    auto col = katz_column_push(g, 0.2, 0, opt);
    const Vector exact = t::katz_matrix(g, 0.2).col(0);
    CHECK((col.to_dense(4) - exact).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("residual identity, nonnegativity and the residual bound") {
  auto g = t::erdos_renyi(60, 0.08, 3);
  const Index n = g.num_vertices();
  const double alpha = 0.9 / static_cast<double>(g.max_degree());
  const MatrixX<double> z = MatrixX<double>::Identity(n, n) - alpha * t::dense_adjacency(g);
  double previous = 1.0;
  bool ok_identity = true, ok_sign = true, ok_monotone = true, ok_bound = true;
  PushOptions opt;
  opt.tau = 1e-8;
  opt.scaling = PushScaling::residual;
  opt.observer = [&](const PushState& s, Index) {
    const Vector x = s.x.to_dense();
    const Vector r = s.r.to_dense();
    const Vector gap = Vector::Unit(n, 2) - z * x - r;
    ok_identity &= gap.lpNorm<1>() <= 1e-10 * (1.0 + static_cast<double>(s.stats.pushes));
    ok_sign &= x.minCoeff() >= -1e-14 && r.minCoeff() >= -1e-14;
    const double norm = r.lpNorm<1>();
    ok_monotone &= norm <= previous + 1e-15;
    ok_bound &= norm <= residual_bound(alpha, g.max_degree(), n, s.stats.pushes) + 1e-14;
    previous = norm;
  };
  auto col = katz_column_push(g, alpha, 2, opt);
  CHECK(col.converged);
  CHECK(ok_identity);
  CHECK(ok_sign);
  CHECK(ok_monotone);
  CHECK(ok_bound);
}

TEST_CASE("work accounting") {
  auto g = t::preferential_attachment(200, 2, 8);
  auto col = katz_column_push(g, 0.5 / spectral_norm_estimate(g), 10);
  CHECK(col.stats.effective_matvecs ==
        doctest::Approx(static_cast<double>(col.stats.edge_touches) / g.volume()));
  CHECK(col.stats.touched_vertices >= static_cast<Index>(col.entries.size()));
}

TEST_CASE("alpha checks") {
  auto g = t::star(4);  // d_max = 4, sigma = 2
  PushOptions opt;
  opt.spectral_norm = 2.0;
  CHECK_THROWS_AS(katz_column_push(g, 0.5, 0, opt), ParameterError);
  PushOptions loose;
  auto col = katz_column_push(g, 0.3, 0, loose);
  CHECK_FALSE(col.warnings.empty());
  CHECK(col.converged);
  CHECK((col.to_dense(5) - t::katz_matrix(g, 0.3).col(0)).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("push cap leaves an unconverged column") {
  auto g = t::erdos_renyi(100, 0.05, 1);
  PushOptions opt;
  opt.tau = 1e-12;
  opt.max_pushes = 5;
  auto col = katz_column_push(g, 0.5 / spectral_norm_estimate(g), 0, opt);
  CHECK_FALSE(col.converged);
  CHECK(col.stats.pushes == 5);
}

TEST_CASE("residual bound values") {
  CHECK(residual_bound(0.3, 3, 10, 0) == 1.0);
  CHECK(residual_bound(0.0, 5, 10, 4) == doctest::Approx(std::pow(0.9, 4)));
  CHECK(residual_bound(0.5, 1, 2, 2) == doctest::Approx(0.5625));
  CHECK_THROWS_AS(residual_bound(0.5, 2, 10, 1), ParameterError);
}

TEST_CASE("participation of columns") {
  auto cyc = t::cycle(10);
  // the column of a vertex-transitive graph with alpha close to 1/2 spreads out
  auto spread = participation_trace(cyc, 0.49, {0}, 1e-12);
  CHECK(spread.ratios[0] > 5.0);
  auto tight = participation_trace(cyc, 0.1, {0, 1}, 2.0);
  CHECK(tight.ratios[0] == 1.0);
  CHECK(tight.min == 1.0);
  CHECK(tight.max == 1.0);

  auto g = t::preferential_attachment(150, 2, 4);
  const double alpha = 0.5 / spectral_norm_estimate(g);
  auto summary = participation_trace(g, alpha, {0, 5, 50}, 1e-10);
  REQUIRE(summary.ratios.size() == 3);
  auto col = katz_column_push(g, alpha, 5, PushOptions{1e-10});
  CHECK(summary.ratios[1] == doctest::Approx(participation_ratio(col.to_dense(150))));
  CHECK(summary.min <= summary.median);
  CHECK(summary.median <= summary.max);
}

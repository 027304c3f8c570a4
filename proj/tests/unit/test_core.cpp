#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chaoslab/density.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/fit.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/measure.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/stats.hpp"
#include "gen.hpp"

using namespace chaoslab;

TEST_CASE("densities integrate to one and match their declared moments") {
  for (const auto& f : {Density::gaussian(), Density::uniform(-std::sqrt(3.0), std::sqrt(3.0)), Density::bimodal(),
                        Density::skewed_bimodal()}) {
    CAPTURE(f.id());
    CHECK(integrate_over(f, [&](double v) { return f.pdf(v); }) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(f.mean()) < 1e-10);
    CHECK(f.variance() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(expect(f, [](double v) { return v * v; }) == doctest::Approx(f.moment(2)).epsilon(1e-9));
  }
}

TEST_CASE("quantile inverts the cdf") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(11, t);
    const auto f = gen::mixture(rng);
    const double p = gen::real(rng, 0.001, 0.999);
    CHECK(f.cdf(f.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("score is the derivative of log_pdf") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(12, t);
    const auto f = gen::mixture(rng);
    const double v = gen::real(rng, -3.0, 3.0);
    const double h = 1e-5;
    const double fd = (f.log_pdf(v + h) - f.log_pdf(v - h)) / (2 * h);
    CHECK(f.score(v) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("affine image rescales the moments") {
  const auto f = Density::skewed_bimodal().affine(0.5, 2.0);
  CHECK(f.mean() == doctest::Approx(0.5));
  CHECK(f.variance() == doctest::Approx(4.0));
}

TEST_CASE("standardized grids have lattice mean 0 and variance 1") {
  for (const auto& f : {Density::uniform(-1.0, 3.0), Density::bimodal(), Density::skewed_bimodal()}) {
    const auto g = GridDensity::standardized(f, 12.0, 1u << 12);
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g.mean()) < 1e-10);
    CHECK(g.variance() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tensor grid marginal of a product recovers the factor") {
  const auto g = Density::gaussian();
  const auto t = TensorGrid::product({g, g}, 8.0, 401);
  const auto m = t.marginal(1);
  CHECK(m.mass() == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 0; i < m.n_axis(); i += 40) CHECK(m.values()[i] == doctest::Approx(g.pdf(m.x(i))).epsilon(1e-8));
}

TEST_CASE("empirical measures") {
  const auto x = Configuration::scalar({0.0, 1.0, 3.0});
  const auto mu = make_empirical(x);
  CHECK(mu.size() == 3);
  CHECK(mu.weight(0) == doctest::Approx(1.0 / 3));

  SUBCASE("pairs without repetition") {
    const auto mu2 = make_empirical(x, 2);
    CHECK(mu2.dim() == 2);
    CHECK(mu2.size() == 6);
    for (std::size_t a = 0; a < mu2.size(); ++a) CHECK(mu2.point(a)[0] != mu2.point(a)[1]);
    const auto back = mu2.marginal(1).merged();
    REQUIRE(back.size() == 3);
    for (std::size_t a = 0; a < 3; ++a) CHECK(back.weight(a) == doctest::Approx(1.0 / 3));
  }
  CHECK_THROWS_AS(make_empirical(x, 4), Error);
}

TEST_CASE("tensor power refuses oversized products") {
  const auto f = DiscreteMeasure::uniform(1, 1, {0.0, 1.0, 2.0, 3.0});
  CHECK(tensor_power(f, 3).size() == 64);
  CHECK_THROWS_AS(tensor_power(f, 12, 1000), Error);
}

TEST_CASE("log-log fit recovers an exact power law") {
  std::vector<int> ns{4, 8, 16, 32, 64};
  std::vector<double> v;
  for (int n : ns) v.push_back(3.0 * std::pow(n, -0.5));
  const auto r = loglog_fit(ns, v);
  CHECK(r.fitted_slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::exp(r.fitted_intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.residual_rms < 1e-12);
  CHECK_THROWS_AS(loglog_fit({1, 2, 3}, {1.0, 0.5, 0.3}), Error);
  CHECK_THROWS_AS(loglog_fit({1, 2, 3, 4}, {1.0, 0.5, 0.0, 0.1}), Error);
}

TEST_CASE("parallel_map is independent of the worker count") {
  auto fn = [](std::size_t i) {
    auto rng = make_rng(7, i);
    return standard_normal(rng);
  };
  set_thread_limit(1);
  const auto a = parallel_map(100, fn);
  set_thread_limit(4);
  const auto b = parallel_map(100, fn);
  set_thread_limit(0);
  CHECK(a == b);
}

TEST_CASE("KS test accepts the right law and rejects a shifted one") {
  auto rng = make_rng(99);
  std::vector<double> xs(4000);
  for (auto& x : xs) x = standard_normal(rng);
  const auto g = Density::gaussian();
  CHECK(ks_one_sample(xs, [&](double v) { return g.cdf(v); }).p_value > 1e-3);
  CHECK(ks_one_sample(xs, [&](double v) { return g.cdf(v - 0.2); }).p_value < 1e-6);
}

TEST_CASE("tabulated densities: cell-wise moments and affine images") {
  const auto g = GridDensity::from_density(Density::skewed_bimodal(), 8.0, 512);
  const auto f = Density::tabulated(g);
  CHECK(integrate_over(f, [&](double v) { return f.pdf(v); }) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.abs_moment(6.0) > 0.0);
  for (double scale : {0.7, -1.3}) {
    const auto a = f.affine(0.4, scale);
    CAPTURE(scale);
    CHECK(a.mean() == doctest::Approx(0.4 + scale * f.mean()).epsilon(1e-10));
    CHECK(a.variance() == doctest::Approx(scale * scale * f.variance()).epsilon(1e-10));
    CHECK(a.cdf(a.quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(a.id() != f.id());
  }
}

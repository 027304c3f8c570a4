#include <doctest.h>

#include <cmath>

#include "chaoslab/clt.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/oracles.hpp"

using namespace chaoslab;
using namespace chaoslab::clt;

TEST_CASE("the Gaussian is a fixed point") {
  const auto g = GridDensity::standardized(Density::gaussian(), 12.0, 1u << 12);
  for (std::size_t n : {2u, 7u, 64u}) CHECK(sup_error(iterate_clt(g, n)) < 1e-5);
}

TEST_CASE("iterates keep mass, mean and variance") {
  const auto g = GridDensity::standardized(Density::skewed_bimodal(), 12.0, 1u << 12);
  for (std::size_t n : {2u, 5u, 33u}) {
    const auto gn = iterate_clt(g, n);
    CHECK(gn.mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(gn.mean()) < 1e-8);
    CHECK(gn.variance() == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("frequency route agrees with real-space convolution") {
  const auto g = GridDensity::standardized(Density::uniform(-1.0, 1.0));
  for (std::size_t n : {2u, 3u}) {
    const auto a = iterate_clt(g, n);
    const auto b = oracle::clt_real_space(g, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.n_points(); ++i) worst = std::max(worst, std::abs(a.value(i) - b.value(i)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("hypotheses on the base") {
  const auto off = GridDensity::from_density(Density::gaussian(0.1, 1.0), 12.0, 1u << 10);
  CHECK_THROWS_AS(iterate_clt(off, 4), Error);
  const auto g = GridDensity::standardized(Density::uniform(-1.0, 1.0), 12.0, 1u << 10);
  const auto b = char_fn_bounds_check(g);
  CHECK(b.delta > 0.0);
  CHECK(b.kappa < 1.0);
}

TEST_CASE("coarse grids report aliasing") {
  const auto g = GridDensity::standardized(Density::uniform(-1.0, 1.0), 64.0, 1u << 7);
  CHECK_THROWS_AS(iterate_clt(g, 1), Error);
}

TEST_CASE("sup error decreases for a smooth asymmetric base") {
  const auto g = GridDensity::standardized(Density::skewed_bimodal(), 12.0, 1u << 12);
  const auto run = run_clt(g, {8, 16, 32, 64, 128});
  for (std::size_t i = 1; i < run.sup_errors.size(); ++i) CHECK(run.sup_errors[i] < run.sup_errors[i - 1]);
  CHECK(run.report.fitted_slope < -0.3);
}

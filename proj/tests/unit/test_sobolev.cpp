#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/oracles.hpp"
#include "chaoslab/sobolev.hpp"
#include "chaoslab/transport.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::sobolev;
using std::numbers::pi;

TEST_CASE("closed forms of Phi_s on the line") {
  // s = 1: pi e^{-r};  s = 2: (pi/2)(1 + r) e^{-r}
  for (double r : {0.0, 0.1, 0.7, 2.0, 9.0}) {
    CAPTURE(r);
    CHECK(phi_closed_form(1.0, 1, r) == doctest::Approx(pi * std::exp(-r)).epsilon(1e-12));
    CHECK(phi_closed_form(2.0, 1, r) == doctest::Approx(pi / 2 * (1 + r) * std::exp(-r)).epsilon(1e-12));
  }
  // d = 3, s = 2: pi^2 e^{-r}
  CHECK(phi_closed_form(2.0, 3, 1.3) == doctest::Approx(pi * pi * std::exp(-1.3)).epsilon(1e-12));
}

TEST_CASE("table matches the closed form") {
  for (double s : {0.75, 1.0, 1.5, 2.0, 3.0}) {
    const HsKernel k(s);
    CAPTURE(s);
    CHECK(k.at_zero() == doctest::Approx(phi_closed_form(s, 1, 0.0)).epsilon(1e-12));
    for (double r = 0.013; r < 30.0; r *= 1.37) CHECK(k.radial(r) == doctest::Approx(phi_closed_form(s, 1, r)).epsilon(1e-8));
  }
  CHECK(HsKernel(2.0).at_zero() == doctest::Approx(pi / 2));
  CHECK(std::isinf(HsKernel(1.0).lipschitz_bound()));
  CHECK(std::isfinite(HsKernel(1.5001).lipschitz_bound()));
  CHECK_THROWS_AS(HsKernel(0.5), Error);
}

TEST_CASE("closed form agrees with the Fourier integral") {
  for (double s : {1.0, 2.0})
    for (double r : {0.0, 0.5, 3.0}) {
      CAPTURE(s);
      CAPTURE(r);
      CHECK(oracle::phi_fourier(s, 1, r) == doctest::Approx(phi_closed_form(s, 1, r)).epsilon(1e-8));
    }
  CHECK(oracle::phi_fourier(2.0, 3, 1.0) == doctest::Approx(phi_closed_form(2.0, 3, 1.0)).epsilon(1e-8));
}

TEST_CASE("hs distance is a nonnegative quadratic form matching its Fourier side") {
  for (int t = 0; t < 15; ++t) {
    auto rng = gen::stream(31, t);
    const auto mu = gen::measure(rng, gen::size(rng, 1, 6));
    const auto nu = gen::measure(rng, gen::size(rng, 1, 6));
    const HsKernel k(2.0);
    const double d = hs_dist_sq(mu, nu, k);
    CHECK(d >= 0.0);
    CHECK(hs_dist_sq(mu, mu, k) == doctest::Approx(0.0).epsilon(1e-12));
    const auto f = oracle::hs_dist_sq_fourier(mu, nu, 2.0);
    CHECK(std::abs(d - f.value) <= 1e-6 * d + f.tail_bound + 1e-12);
  }
}

TEST_CASE("W1 and the negative Sobolev norm bound each other") {
  for (int t = 0; t < 25; ++t) {
    auto rng = gen::stream(32, t);
    const auto mu = gen::measure(rng, gen::size(rng, 2, 30));
    const auto nu = gen::measure(rng, gen::size(rng, 2, 30));
    const auto c = hs_w1_bridge_check(mu, nu, 4.0, 1.0);
    CHECK(c.holds());
    CHECK(c.w1 == doctest::Approx(transport::w1_line(mu, nu)).epsilon(1e-12));
  }
}

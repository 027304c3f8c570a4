#include <doctest.h>

#include <cmath>

#include "chaoslab/chaos.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/kacsphere.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::chaos;

TEST_CASE("a product law coupled with itself costs nothing") {
  const auto f = Density::bimodal();
  const auto e = omega_n(product_sampler(f, 20), f, 20, 200, 61);
  CHECK(e.value == doctest::Approx(0.0));
  CHECK(e.upper_bound);
  CHECK(omega_n(product_sampler(f, 20), f, 20, 200, 61, false).value > 0.1);
}

TEST_CASE("Omega_infinity of a product law decays with N") {
  const auto f = Density::gaussian();
  const auto a = omega_inf(product_sampler(f, 16), f, 16, 200, 0, 62);
  const auto b = omega_inf(product_sampler(f, 256), f, 256, 200, 0, 62);
  CHECK(b.value < a.value);
  CHECK(a.std_err > 0.0);
}

TEST_CASE("Omega_j of sigma^N is bounded by the exact L1 marginal distance") {
  for (std::size_t n : {16u, 64u}) {
    const auto exact = omega_j_sigma(n, 1);
    CHECK(exact.value == doctest::Approx(0.5 * kac::sigma_gaussian_l1(n, 1)));
    CHECK(omega_j_sigma(n, 2).value >= exact.value - 1e-12);
  }
}

TEST_CASE("Grunbaum bound on exact symmetric laws") {
  for (int t = 0; t < 30; ++t) {
    auto rng = gen::stream(63, t);
    const std::size_t alphabet = gen::size(rng, 2, 3);
    const std::size_t n = gen::size(rng, 3, alphabet == 2 ? 10 : 7);
    const auto g = SymmetricPmf::random(alphabet, n, rng);
    const auto r1 = grunbaum_exact(g, 1);
    CHECK(r1.tv == doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t j = 2; j <= std::min<std::size_t>(n, 3); ++j) {
      const auto r = grunbaum_exact(g, j);
      CHECK(r.holds());
      CHECK(r.w1 <= r.tv / 2 + 1e-12);
    }
  }
}

TEST_CASE("orbit formulation of W1 between symmetric laws") {
  for (int t = 0; t < 20; ++t) {
    auto rng = gen::stream(64, t);
    const std::size_t n = gen::size(rng, 2, 4);
    const auto f = SymmetricPmf::random(3, n, rng);
    const auto g = SymmetricPmf::random(3, n, rng);
    const std::vector<double> pts{0.0, gen::real(rng, 0.1, 0.9), gen::real(rng, 1.0, 2.0)};
    const auto id = pushforward_identity_exact(f, g, pts);
    CHECK(id.lhs == doctest::Approx(id.rhs).epsilon(1e-10));
    const auto same = pushforward_identity_exact(f, f, pts);
    CHECK(same.lhs == doctest::Approx(0.0));
  }
}

TEST_CASE("symmetric tables reject asymmetric input and index round trips") {
  CHECK_THROWS_AS(SymmetricPmf(2, 2, {0.5, 0.5, 0.0, 0.0}), Error);
  const auto p = SymmetricPmf::product({0.2, 0.8}, 4);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.index(p.state(i)) == i);
  CHECK(grunbaum_exact(p, 2).tv <= grunbaum_exact(p, 2).bound);
}

TEST_CASE("the two-state mixture separates Omega_1 from Omega_2") {
  const auto r = omega1_counterexample(Density::gaussian(-1.0, 0.5), Density::gaussian(1.0, 0.5), 64, 4000, 400, 65);
  CHECK(r.separated());
  CHECK(r.omega2.value > 0.05);
}

TEST_CASE("Omega_j grows along a chain of blocks") {
  const auto g = Density::gaussian(-1.0, 0.5), h = Density::gaussian(1.0, 0.5);
  const auto f = Density::gaussian_mixture({{0.5, -1.0, 0.5}, {0.5, 1.0, 0.5}});
  const auto s = two_state_sampler(g, h, 32);
  const double o1 = omega_j(s, f, 1, 32, 400, 0, 66).value;
  const double o2 = omega_j(s, f, 2, 32, 400, 0, 66).value;
  CHECK(o2 > o1);
}

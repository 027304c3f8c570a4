#include <doctest.h>

#include <cmath>

#include "chaoslab/error.hpp"
#include "chaoslab/information.hpp"
#include "chaoslab/mixtures.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::mix;

TEST_CASE("a single atom has no entropy gap") {
  const auto f = Density::bimodal();
  const Mixture pi({{1.0, f}});
  CHECK(level3_entropy(pi) == doctest::Approx(info::entropy(f).value));
  const auto c = marginal_entropy_curve(pi, {1, 2, 4, 8}, 20000, 71);
  for (double g : c.gaps) CHECK(std::abs(g) < 1e-12);
}

TEST_CASE("weights are validated") {
  CHECK_THROWS_AS(Mixture({{0.3, Density::gaussian()}, {0.3, Density::bimodal()}}), Error);
  CHECK_THROWS_AS(Mixture({{-0.1, Density::gaussian()}, {1.1, Density::bimodal()}}), Error);
}

TEST_CASE("level-3 functionals are affine in the mixture") {
  for (int t = 0; t < 20; ++t) {
    auto rng = gen::stream(72, t);
    const Mixture a({{1.0, gen::mixture(rng)}});
    const Mixture b({{0.4, gen::mixture(rng)}, {0.6, gen::mixture(rng)}});
    const double th = gen::real(rng, 0.0, 1.0);
    const auto c = Mixture::combine(th, a, b);
    CHECK(level3_entropy(c) == doctest::Approx(th * level3_entropy(a) + (1 - th) * level3_entropy(b)));
    CHECK(level3_fisher(c) == doctest::Approx(th * level3_fisher(a) + (1 - th) * level3_fisher(b)));
  }
}

TEST_CASE("marginals are compatible") {
  const Mixture pi({{0.5, Density::gaussian(-1.0, 0.7)}, {0.5, Density::gaussian(1.5, 0.8)}});
  const auto m2 = mixture_marginal(pi, 2, 10.0, 401);
  const auto m1 = mixture_marginal(pi, 1, 10.0, 401);
  const auto back = m2.marginal(1);
  CHECK(m2.mass() == doctest::Approx(1.0).epsilon(1e-8));
  for (std::size_t i = 0; i < m1.n_axis(); i += 20) CHECK(back.values()[i] == doctest::Approx(m1.values()[i]).epsilon(1e-8));
  for (double v : {-1.0, 0.0, 2.0}) {
    const double both[2] = {v, 0.3};
    CHECK(std::exp(pi.log_marginal(both)) ==
          doctest::Approx(0.5 * Density::gaussian(-1.0, 0.7).pdf(v) * Density::gaussian(-1.0, 0.7).pdf(0.3) +
                          0.5 * Density::gaussian(1.5, 0.8).pdf(v) * Density::gaussian(1.5, 0.8).pdf(0.3)));
  }
}

TEST_CASE("marginal entropy increases towards the level-3 value") {
  const Mixture pi({{0.5, Density::gaussian(-4.0, 1.0)}, {0.5, Density::gaussian(4.0, 1.0)}});
  const auto c = marginal_entropy_curve(pi, {1, 2, 4, 8, 16}, 40000, 73);
  CHECK(c.monotone);
  CHECK(c.below_level3);
  CHECK(c.gaps.front() == doctest::Approx(std::log(2.0)).epsilon(1e-2));
}

TEST_CASE("empirical measures of mixture draws") {
  const Mixture pi({{0.3, Density::gaussian(-1.0, 0.5)}, {0.7, Density::gaussian(1.0, 0.5)}});
  const auto p = definetti_cauchy_probe(pi, {8, 16, 32, 64}, 1.0, 100, 74);
  CHECK(p.violations == 0);
  for (std::size_t i = 0; i < p.exact.size(); ++i) CHECK(p.exact[i] <= p.bound[i]);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chaoslab/assignment.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/oracles.hpp"
#include "chaoslab/transport.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::transport;

TEST_CASE("w1_config agrees with brute force over permutations") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(21, t);
    const std::size_t n = gen::size(rng, 1, 7);
    const std::size_t dim = gen::size(rng, 1, 2);
    const Configuration x(dim, gen::points(rng, n * dim, 0.7));
    const Configuration y(dim, gen::points(rng, n * dim, 0.7));
    CHECK(w1_config(x, y).value == doctest::Approx(oracle::w1_config_bruteforce(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("line solver, simplex and assignment agree on the line") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(22, t);
    const std::size_t n = gen::size(rng, 2, 40);
    const auto xs = gen::points(rng, n, 1.0);
    const auto ys = gen::points(rng, n, 1.0);
    const double line = w1_line_samples(xs, ys);
    CHECK(line == doctest::Approx(w1_config(Configuration::scalar(xs), Configuration::scalar(ys)).value).epsilon(1e-10));
    const auto mu = DiscreteMeasure::uniform(1, 1, xs);
    const auto nu = DiscreteMeasure::uniform(1, 1, ys);
    CHECK(line == doctest::Approx(w1_discrete(mu, nu).cost).epsilon(1e-10));
  }
}

TEST_CASE("weighted line solver matches the simplex, unequal sizes") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(23, t);
    const auto mu = gen::measure(rng, gen::size(rng, 1, 25));
    const auto nu = gen::measure(rng, gen::size(rng, 1, 25));
    const double trunc = gen::real(rng, 0.3, 3.0);
    CHECK(w1_line(mu, nu, trunc) == doctest::Approx(w1_discrete(mu, nu, CostSpec::bounded(trunc)).cost).epsilon(1e-9));
  }
}

TEST_CASE("metric axioms of W1") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(24, t);
    const auto a = gen::measure(rng, gen::size(rng, 1, 12), 2);
    const auto b = gen::measure(rng, gen::size(rng, 1, 12), 2);
    const auto c = gen::measure(rng, gen::size(rng, 1, 12), 2);
    const double ab = w1_discrete(a, b).cost;
    CHECK(ab >= 0.0);
    CHECK(w1_discrete(a, a).cost == doctest::Approx(0.0));
    CHECK(ab == doctest::Approx(w1_discrete(b, a).cost).epsilon(1e-10));
    CHECK(ab <= w1_discrete(a, c).cost + w1_discrete(c, b).cost + 1e-10);
    CHECK(ab <= 1.0 + 1e-12);
  }
}

TEST_CASE("transport plans have the right marginals") {
  auto rng = gen::stream(25, 0);
  const auto mu = gen::measure(rng, 9);
  const auto nu = gen::measure(rng, 13);
  const auto plan = w1_discrete(mu, nu);
  std::vector<double> rows(mu.size()), cols(nu.size());
  double cost = 0.0;
  for (const auto& f : plan.flows) {
    CHECK(f.mass >= -1e-15);
    rows[f.source] += f.mass;
    cols[f.target] += f.mass;
    cost += f.mass * point_cost(mu.point(f.source), nu.point(f.target), 1, {});
  }
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(rows[i] == doctest::Approx(mu.weight(i)));
  for (std::size_t i = 0; i < nu.size(); ++i) CHECK(cols[i] == doctest::Approx(nu.weight(i)));
  CHECK(cost == doctest::Approx(plan.cost));
}

TEST_CASE("assignment on a known matrix") {
  const std::vector<double> c{4, 1, 3, 2, 0, 5, 3, 2, 2};
  const auto a = solve_assignment(c, 3);
  CHECK(a.cost == doctest::Approx(5.0));
  CHECK(a.row_to_col == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("dual witnesses bound W1 from below") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(26, t);
    const auto mu = gen::measure(rng, gen::size(rng, 1, 15));
    const auto nu = gen::measure(rng, gen::size(rng, 1, 15));
    const double c = gen::real(rng, -2.0, 2.0);
    const Witness phi = [c](std::span<const double> x) { return std::clamp(x[0] - c, -0.5, 0.5); };
    CHECK(w1_dual_lower_bound(mu, nu, phi) <= w1_discrete(mu, nu).cost + 1e-12);
  }
  const auto mu = DiscreteMeasure::dirac({0.0});
  const auto nu = DiscreteMeasure::dirac({0.5});
  const Witness steep = [](std::span<const double> x) { return 3.0 * x[0]; };
  CHECK_THROWS_AS(w1_dual_lower_bound(mu, nu, steep), Error);
}

TEST_CASE("tensorization identities") {
  for (int t = 0; t < 20; ++t) {
    auto rng = gen::stream(27, t);
    const auto f = gen::measure(rng, gen::size(rng, 1, 3));
    const auto g = gen::measure(rng, gen::size(rng, 1, 3));
    const auto h = gen::measure(rng, gen::size(rng, 1, 3));
    const auto tc = tensorization_check(f, g, 3);
    CHECK(tc.lhs == doctest::Approx(tc.rhs).epsilon(1e-10));
    const auto pc = tensorization_pad_check(f, g, h);
    CHECK(pc.lhs == doctest::Approx(pc.rhs).epsilon(1e-10));
  }
}

TEST_CASE("quadratic cost on the line") {
  const auto mu = DiscreteMeasure::uniform(1, 1, {0.0, 1.0});
  const auto nu = DiscreteMeasure::uniform(1, 1, {0.5, 3.0});
  CHECK(w2_line(mu, nu) == doctest::Approx(std::sqrt((0.25 + 4.0) / 2)));
  CHECK(w1_line_unbounded(mu, nu) == doctest::Approx((0.5 + 2.0) / 2));
}

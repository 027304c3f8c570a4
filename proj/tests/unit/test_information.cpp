#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/information.hpp"
#include "chaoslab/measure.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::info;
using std::numbers::pi;

TEST_CASE("closed forms") {
  const double sd = 1.7;
  const auto g = Density::gaussian(0.3, sd);
  CHECK(entropy(g).value == doctest::Approx(-0.5 * std::log(2 * pi * std::exp(1.0) * sd * sd)).epsilon(1e-12));
  CHECK(fisher(g).value == doctest::Approx(1 / (sd * sd)).epsilon(1e-12));
  CHECK(entropy(Density::uniform(-1.0, 3.0)).value == doctest::Approx(-std::log(4.0)));
  CHECK(fisher(Density::uniform(-1.0, 3.0)).infinite);
  const auto r = relative_entropy(Density::gaussian(1.0, 1.0), Density::gaussian());
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(w2(Density::gaussian(1.0, 2.0), Density::gaussian()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("quadrature agrees with the closed forms") {
  for (int t = 0; t < 20; ++t) {
    auto rng = gen::stream(41, t);
    const double m = gen::real(rng, -2.0, 2.0), sd = gen::real(rng, 0.3, 3.0);
    const auto g = Density::gaussian(m, sd);
    CHECK(entropy_quadrature(g).value == doctest::Approx(entropy(g).value).epsilon(1e-8));
    CHECK(fisher_quadrature(g).value == doctest::Approx(fisher(g).value).epsilon(1e-8));
  }
}

TEST_CASE("Gaussian minimizes entropy at fixed variance; moment bound holds") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(42, t);
    const auto f = gen::mixture(rng);
    const double h = entropy(f).value;
    CHECK(h >= -0.5 * std::log(2 * pi * std::exp(1.0) * f.variance()) - 1e-9);
    CHECK(fisher(f).value >= 1.0 / f.variance() - 1e-9);
    for (double k : {1.0, 2.0, 4.0}) CHECK(entropy_moment_lower_bound(f, k) <= h + 1e-9);
  }
}

TEST_CASE("HWI with C_E = 1 against the Gaussian") {
  for (int t = 0; t < gen::kCases; ++t) {
    auto rng = gen::stream(43, t);
    const auto f = gen::mixture(rng);
    const auto c = hwi_check(f, Density::gaussian(f.mean(), std::sqrt(f.variance())));
    CAPTURE(c.lhs);
    CAPTURE(c.rhs);
    CHECK(c.holds());
  }
}

TEST_CASE("dual Fisher bound stays below I(f)") {
  for (int t = 0; t < 20; ++t) {
    auto rng = gen::stream(44, t);
    const auto f = gen::mixture(rng);
    const double a = gen::real(rng, -2.0, 2.0);
    const double lb = fisher_dual_lower_bound(
        f, [a](double v) { return std::tanh(v - a); }, [a](double v) { return 1.0 / std::pow(std::cosh(v - a), 2); });
    CHECK(lb <= fisher(f).value + 1e-9);
  }
}

TEST_CASE("Kozachenko-Leonenko estimator on Gaussian samples") {
  auto rng = make_rng(45);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = standard_normal(rng);
  const auto e = entropy_knn(xs);
  const double exact = entropy(Density::gaussian()).value;
  CHECK(std::abs(e.value - exact) < 4 * e.std_err + 0.01);
  xs.resize(30);
  CHECK_THROWS_AS(entropy_knn(xs), Error);
}

TEST_CASE("discrete superadditivity for symmetric measures") {
  for (int t = 0; t < 30; ++t) {
    auto rng = gen::stream(46, t);
    // two-atom mixture of products on a 3-letter alphabet
    const std::vector<double> letters{0.0, 1.0, 2.0};
    const auto a = tensor_power(DiscreteMeasure(1, 1, letters, gen::simplex(rng, 3)), 3);
    const auto b = tensor_power(DiscreteMeasure(1, 1, letters, gen::simplex(rng, 3)), 3);
    std::vector<double> pts(a.points().begin(), a.points().end());
    pts.insert(pts.end(), b.points().begin(), b.points().end());
    const double th = gen::real(rng, 0.1, 0.9);
    std::vector<double> w;
    for (double x : a.weights()) w.push_back(th * x);
    for (double x : b.weights()) w.push_back((1 - th) * x);
    const DiscreteMeasure f(3, 1, pts, w);
    CHECK(superadditivity_check(f, 1, 2).holds());
    CHECK(superadditivity_check(f, 2, 1).holds());
  }
  const DiscreteMeasure skew(2, 1, {0.0, 1.0}, {1.0});
  CHECK_THROWS_AS(superadditivity_check(skew, 1, 1), Error);
}

TEST_CASE("tensorization of grid entropy and Fisher") {
  const auto f = Density::bimodal();
  const auto t = TensorGrid::product({f, f}, 8.0, 801);
  CHECK(entropy(t).value == doctest::Approx(entropy(f).value).epsilon(1e-4));
  CHECK(fisher(t).value == doctest::Approx(fisher(f).value).epsilon(1e-3));
  const auto c = fisher_superadditivity_check(t);
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-3));
}

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/quadrature.hpp"
#include "gen.hpp"

using namespace chaoslab;
using namespace chaoslab::kac;

TEST_CASE("sphere areas") {
  CHECK(std::exp(log_sphere_area(2)) == doctest::Approx(2 * std::numbers::pi));
  CHECK(std::exp(log_sphere_area(3)) == doctest::Approx(4 * std::numbers::pi));
}

TEST_CASE("samples lie on Kac's sphere") {
  auto rng = make_rng(51);
  for (const auto& v : sample_sigma(17, 50, rng)) {
    double r2 = 0.0;
    for (double x : v.coords()) r2 += x * x;
    CHECK(r2 == doctest::Approx(17.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(SphereConfig(std::vector<double>{1.0, 1.0, 1.0}), Error);
}

TEST_CASE("sigma marginals are probability densities and approach the Gaussian") {
  for (std::size_t n : {5u, 12u, 80u}) {
    const double lim = std::sqrt(static_cast<double>(n));
    const double mass = integrate([&](double v) { return sigma_marginal_pdf(n, 1, std::span<const double>(&v, 1)); },
                                  -lim, lim, 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
  double prev = 2.0;
  for (std::size_t n : {8u, 16u, 32u, 64u, 128u}) {
    const double l1 = sigma_gaussian_l1(n, 1);
    CHECK(l1 < prev);
    prev = l1;
  }
  CHECK(sigma_gaussian_l1(128, 2) < sigma_gaussian_l1(32, 2));
}

TEST_CASE("sampled marginal agrees with the exact one") {
  auto rng = make_rng(52);
  const std::size_t n = 9;
  std::vector<double> first;
  for (const auto& v : sample_sigma(n, 4000, rng)) first.push_back(v[0]);
  const auto cdf = [&](double x) {
    const double lim = std::sqrt(static_cast<double>(n));
    if (x <= -lim) return 0.0;
    return integrate([&](double v) { return sigma_marginal_pdf(n, 1, std::span<const double>(&v, 1)); }, -lim,
                     std::min(x, lim), 1e-10);
  };
  CHECK(ks_one_sample(first, cdf).p_value > 1e-3);
}

TEST_CASE("Gaussian partition functions are flat, so F^N = sigma^N") {
  const auto dir = std::filesystem::temp_directory_path() / "chaoslab-unit-cache";
  const std::size_t n = 40;
  const auto table = PartitionTable::cached(Density::gaussian(), n, dir);
  for (std::size_t k : {3u, 10u, 39u}) CHECK(std::abs(table.log_zprime(k, std::sqrt(static_cast<double>(k)))) < 1e-4);
  for (double v : {0.0, 0.8, -2.0})
    CHECK(theta(n, v, table) * gaussian_pdf(v) ==
          doctest::Approx(sigma_marginal_pdf(n, 1, std::span<const double>(&v, 1))).epsilon(1e-4));
  CHECK(conditioned_l1(Density::gaussian(), n, table) == doctest::Approx(sigma_gaussian_l1(n, 1)).epsilon(1e-3));
}

TEST_CASE("partition tables survive a save/load round trip") {
  const auto f = Density::uniform(-std::sqrt(3.0), std::sqrt(3.0));
  PartitionGrid grid;
  grid.points = 1u << 12;
  const auto a = PartitionTable::build(f, 20, grid);
  const auto path = std::filesystem::temp_directory_path() / "chaoslab-roundtrip.cptbl";
  a.save(path);
  const auto b = PartitionTable::load(path);
  std::filesystem::remove(path);
  CHECK(b.density_id() == a.density_id());
  CHECK(b.max_n() == a.max_n());
  CHECK(b.points() == a.points());
  CHECK(b.second_moment() == a.second_moment());
  for (std::size_t k : {1u, 5u, 20u})
    for (double r : {1.0, 2.5, 4.0}) CHECK(b.log_zprime(k, r) == a.log_zprime(k, r));
}

TEST_CASE("theta integrates to one against the base density") {
  const auto f = Density::bimodal();
  const auto table = PartitionTable::cached(f, 64, std::filesystem::temp_directory_path() / "chaoslab-unit-cache");
  for (std::size_t n : {16u, 64u}) {
    const double lim = std::sqrt(static_cast<double>(n));
    const double mass = fixed_gauss([&](double v) { return theta(n, v, table) * f.pdf(v); }, -lim, lim, 256);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("conditioned sampler lands on the sphere and matches theta f") {
  const auto f = Density::bimodal();
  const auto table = PartitionTable::cached(f, 64, std::filesystem::temp_directory_path() / "chaoslab-unit-cache");
  auto rng = make_rng(53);
  const std::size_t n = 12;
  const auto xs = sample_conditioned(f, n, 3000, table, rng);
  std::vector<double> first;
  for (const auto& v : xs) {
    double r2 = 0.0;
    for (double x : v.coords()) r2 += x * x;
    CHECK(r2 == doctest::Approx(static_cast<double>(n)).epsilon(1e-9));
    first.push_back(v[0]);
  }
  const double lim = std::sqrt(static_cast<double>(n));
  const auto cdf = [&](double x) {
    if (x <= -lim) return 0.0;
    return fixed_gauss([&](double v) { return theta(n, v, table) * f.pdf(v); }, -lim, std::min(x, lim), 64);
  };
  CHECK(ks_one_sample(first, cdf).p_value > 1e-3);
}

TEST_CASE("radial projection cost decreases with N") {
  const auto a = radial_projection_cost(16, 2000, 54);
  const auto b = radial_projection_cost(256, 2000, 54);
  CHECK(b.mean < a.mean);
  CHECK(a.mean > 0.0);
}

#include <cmath>
#include <limits>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab::kac {

SphereConfig::SphereConfig(std::vector<double> coords) : coords_(std::move(coords)) {
  const double n = static_cast<double>(coords_.size());
  require(coords_.size() >= 5, ErrorCode::invalid_argument, "Kac's sphere needs N >= 5");
  double sq = 0.0;
  for (double v : coords_) sq += v * v;
  require(std::abs(sq - n) <= 1e-9 * n, ErrorCode::invalid_argument, "point is not on Kac's sphere");
}

double log_sphere_area(double k) {
  return std::log(2.0) + 0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * k);
}

std::vector<SphereConfig> sample_sigma(std::size_t n, std::size_t count, Rng& rng) {
  require(n >= 5, ErrorCode::invalid_argument, "Kac's sphere needs N >= 5");
  std::vector<SphereConfig> out;
  out.reserve(count);
  std::vector<double> v(n);
  for (std::size_t c = 0; c < count; ++c) {
    double sq = 0.0;
    for (auto& x : v) {
      x = standard_normal(rng);
      sq += x * x;
    }
    const double scale = std::sqrt(static_cast<double>(n) / sq);
    for (auto& x : v) x *= scale;
    out.emplace_back(v);
  }
  return out;
}

double sigma_marginal_log_pdf(std::size_t n, std::size_t ell, std::span<const double> v) {
  require(ell >= 1 && ell < n, ErrorCode::invalid_argument, "marginal order must lie in [1, N-1]");
  require(v.size() == ell, ErrorCode::shape_mismatch, "point has the wrong number of coordinates");
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::log(sigma_marginal_radial(n, ell, std::sqrt(sq)));
}

double sigma_marginal_pdf(std::size_t n, std::size_t ell, std::span<const double> v) {
  return std::exp(sigma_marginal_log_pdf(n, ell, v));
}

double sigma_marginal_radial(std::size_t n, std::size_t ell, double r) {
  require(ell >= 1 && ell < n, ErrorCode::invalid_argument, "marginal order must lie in [1, N-1]");
  const double nn = static_cast<double>(n), l = static_cast<double>(ell);
  const double t = r * r / nn;
  if (t >= 1.0) return 0.0;
  const double log_value = 0.5 * (nn - l - 2.0) * std::log1p(-t) + log_sphere_area(nn - l) - 0.5 * l * std::log(nn) -
                           log_sphere_area(nn);
  return std::exp(log_value);
}

double sigma_gaussian_l1(std::size_t n, std::size_t ell) {
  require(ell == 1 || ell == 2, ErrorCode::invalid_argument, "L1 distance is available for ell = 1, 2");
  const double rmax = std::sqrt(static_cast<double>(n));
  const double l = static_cast<double>(ell);
  const double gauss_norm = std::pow(2.0 * std::numbers::pi, -0.5 * l);
  const double surface = ell == 1 ? 2.0 : 2.0 * std::numbers::pi;  // |S^{ell-1}| r^{ell-1} dr
  const auto diff = [&](double r) {
    return surface * std::pow(r, l - 1.0) *
           (sigma_marginal_radial(n, ell, r) - gauss_norm * std::exp(-0.5 * r * r));
  };
  // |diff| has kinks where the two profiles cross; integrate between crossings
  std::vector<double> breaks{0.0};
  constexpr int scan = 4000;
  double prev = diff(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double r = rmax * i / scan;
    const double cur = i == scan ? diff(r * (1.0 - 1e-15)) : diff(r);
    if ((prev < 0.0) != (cur < 0.0) && prev != 0.0 && cur != 0.0) {
      double lo = rmax * (i - 1) / scan, hi = r;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * rmax; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((diff(mid) < 0.0) == (prev < 0.0) ? lo : hi) = mid;
      }
      breaks.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  breaks.push_back(rmax);
  double inner = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    inner += std::abs(fixed_gauss(diff, breaks[k], breaks[k + 1], 64));
  // beyond sqrt(N) only the Gaussian remains
  const double outer = ell == 1 ? std::erfc(rmax / std::sqrt(2.0)) : std::exp(-0.5 * rmax * rmax);
  return inner + outer;
}

MeanStderr radial_projection_cost(std::size_t n, std::size_t reps, std::uint64_t seed) {
  require(n >= 1 && reps >= 2, ErrorCode::invalid_argument, "need N >= 1 and at least two replicas");
  const auto costs = parallel_map(reps, [&](std::size_t rep) {
    Rng rng = make_rng(seed, rep);
    std::vector<double> v(n);
    double sq = 0.0;
    for (auto& x : v) {
      x = standard_normal(rng);
      sq += x * x;
    }
    const double factor = std::sqrt(static_cast<double>(n) / sq) - 1.0;
    double acc = 0.0;
    for (double x : v) acc += std::min(std::abs(factor * x), 1.0);
    return acc / static_cast<double>(n);
  });
  return mean_stderr(costs);
}

}  // namespace chaoslab::kac

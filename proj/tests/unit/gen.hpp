#pragma once
// Hand-rolled generators for the property tests. Each case draws from its own seeded stream.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "chaoslab/density.hpp"
#include "chaoslab/measure.hpp"
#include "chaoslab/rng.hpp"

namespace gen {

inline constexpr int kCases = 60;

inline chaoslab::Rng stream(std::uint64_t test, int trial) {
  return chaoslab::make_rng(test, static_cast<std::uint64_t>(trial));
}

inline std::size_t size(chaoslab::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double real(chaoslab::Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> points(chaoslab::Rng& rng, std::size_t n, double spread = 2.0) {
  std::vector<double> out(n);
  for (auto& x : out) x = spread * chaoslab::standard_normal(rng);
  return out;
}

inline std::vector<double> simplex(chaoslab::Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = 0.05 + real(rng, 0.0, 1.0));
  for (auto& x : w) x /= total;
  return w;
}

inline chaoslab::DiscreteMeasure measure(chaoslab::Rng& rng, std::size_t n, std::size_t dim = 1) {
  return chaoslab::DiscreteMeasure(dim, 1, points(rng, n * dim), simplex(rng, n));
}

/// Standardized-ish Gaussian mixture with 1 to 3 components.
inline chaoslab::Density mixture(chaoslab::Rng& rng) {
  std::vector<chaoslab::GaussianComponent> comps;
  const std::size_t k = size(rng, 1, 3);
  const auto w = simplex(rng, k);
  for (std::size_t i = 0; i < k; ++i) comps.push_back({w[i], real(rng, -2.0, 2.0), real(rng, 0.4, 1.5)});
  return chaoslab::Density::gaussian_mixture(comps);
}

}  // namespace gen

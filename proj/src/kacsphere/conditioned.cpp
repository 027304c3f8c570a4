#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab::kac {

namespace {

void require_table(std::size_t n, const PartitionTable& table, const Density* f = nullptr) {
  require(n >= 5, ErrorCode::invalid_argument, "Kac's sphere needs N >= 5");
  require(n <= table.max_n(), ErrorCode::invalid_argument, "partition table does not reach N");
  if (f != nullptr)
    require(f->id() == table.density_id(), ErrorCode::invalid_argument, "partition table was built for another density");
}

// int g(v) f(v) dv over the integration range of f, with breaks at +-sqrt(N) where theta jumps.
double integrate_against(const Density& f, std::size_t n, const RealFn& g) {
  const Interval range = f.integration_range();
  const double edge = std::sqrt(static_cast<double>(n));
  std::vector<double> cuts{range.lo};
  if (-edge > range.lo && -edge < range.hi) cuts.push_back(-edge);
  if (edge > range.lo && edge < range.hi) cuts.push_back(edge);
  cuts.push_back(range.hi);
  double total = 0.0;
  const auto integrand = [&](double v) {
    const double p = f.pdf(v);
    return p > 0.0 ? g(v) * p : 0.0;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    const auto panels = static_cast<std::size_t>(std::clamp(width / 0.005, 16.0, 20000.0));
    total += fixed_gauss(integrand, cuts[i], cuts[i + 1], panels);
  }
  return total;
}

double log_ratio_to_gaussian(const Density& f, double v) { return f.log_pdf(v) - gaussian_log_pdf(v); }

}  // namespace

double theta(std::size_t n, std::size_t ell, std::span<const double> v, const PartitionTable& table) {
  require(ell == 1 || ell == 2, ErrorCode::invalid_argument, "theta is available for ell = 1, 2");
  require(v.size() == ell, ErrorCode::shape_mismatch, "point has the wrong number of coordinates");
  require_table(n, table);
  double sq = 0.0;
  for (double x : v) sq += x * x;
  const double nn = static_cast<double>(n);
  if (sq >= nn) return 0.0;
  const double l = static_cast<double>(ell);
  const double log_value = 0.5 * l * std::log(2.0 * std::numbers::pi) + 0.5 * sq +
                           table.log_zprime(n - ell, std::sqrt(nn - sq)) - table.log_zprime(n, std::sqrt(nn)) +
                           sigma_marginal_log_pdf(n, ell, v);
  return std::isfinite(log_value) ? std::exp(log_value) : 0.0;
}

double theta(std::size_t n, double v, const PartitionTable& table) {
  const double coords[1] = {v};
  return theta(n, 1, coords, table);
}

double conditioned_l1(const Density& f, std::size_t n, const PartitionTable& table) {
  require_table(n, table, &f);
  return integrate_against(f, n, [&](double v) { return std::abs(theta(n, v, table) - 1.0); });
}

std::vector<SphereConfig> sample_conditioned(const Density& f, std::size_t n, std::size_t count,
                                             const PartitionTable& table, Rng& rng, SamplerStats* stats) {
  require_table(n, table, &f);
  constexpr std::size_t kMaxTries = 1000000;
  constexpr std::size_t kCircle = 4096;
  std::vector<SphereConfig> out;
  out.reserve(count);
  std::vector<double> v(n), weights(kCircle);
  while (out.size() < count) {
    double r2 = static_cast<double>(n);
    bool ok = true;
    // v_i has density proportional to f(v) h^{*(m-1)}(r2 - v^2) given the remaining radius.
    for (std::size_t i = 0; i + 2 < n && ok; ++i) {
      const std::size_t rest = n - i - 1;
      const double log_peak = table.log_h_peak(rest);
      std::size_t tries = 0;
      for (;; ++tries) {
        if (tries == kMaxTries) {
          ok = false;
          break;
        }
        const double x = f.sample(rng);
        if (x * x >= r2) continue;
        const double log_acc = table.log_h(rest, r2 - x * x) - log_peak;
        if (std::log(uniform01(rng)) < log_acc) {
          v[i] = x;
          r2 -= x * x;
          break;
        }
      }
      if (r2 <= 1e-12) ok = false;
    }
    if (!ok) {
      if (stats != nullptr) ++stats->resampled;
      continue;
    }
    // last two coordinates: angle density proportional to f(r cos phi) f(r sin phi)
    const double r = std::sqrt(r2);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(kCircle);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < kCircle; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      weights[j] = f.log_pdf(r * std::cos(phi)) + f.log_pdf(r * std::sin(phi));
      top = std::max(top, weights[j]);
    }
    if (!std::isfinite(top)) {
      if (stats != nullptr) ++stats->resampled;
      continue;
    }
    double total = 0.0;
    for (auto& w : weights) {
      w = std::exp(w - top);
      total += w;
    }
    double target = uniform01(rng) * total;
    std::size_t j = 0;
    while (j + 1 < kCircle && target >= weights[j]) target -= weights[j++];
    const double phi = (static_cast<double>(j) + uniform01(rng)) * dphi;
    v[n - 2] = r * std::cos(phi);
    v[n - 1] = r * std::sin(phi);
    out.emplace_back(v);
  }
  return out;
}

double relative_entropy_to_gaussian(const Density& f) {
  return expect(f, [&](double v) { return log_ratio_to_gaussian(f, v); });
}

double relative_fisher_to_gaussian(const Density& f) {
  return expect(f, [&](double v) {
    const double s = f.score(v) + v;
    return s * s;
  });
}

double entropy_chaos_gap_signed(const Density& f, std::size_t n, const PartitionTable& table) {
  require_table(n, table, &f);
  // int log(f/gamma) f theta - H(f|gamma) = int log(f/gamma) f (theta - 1)
  const double first = integrate_against(
      f, n, [&](double v) { return log_ratio_to_gaussian(f, v) * (theta(n, v, table) - 1.0); });
  const double nn = static_cast<double>(n);
  return first - table.log_zprime(n, std::sqrt(nn)) / nn;
}

double entropy_chaos_gap(const Density& f, std::size_t n, const PartitionTable& table) {
  return std::abs(entropy_chaos_gap_signed(f, n, table));
}

FisherTerms fisher_chaos_terms(const Density& f, std::size_t n, const PartitionTable& table,
                               std::span<const SphereConfig> samples) {
  require_table(n, table, &f);
  require(f.smooth(), ErrorCode::hypothesis_failed, "Fisher terms need a C^1 density");
  const double weighted = expect(f, [&](double v) {
    const double s = f.score(v);
    return s * s * (1.0 + v * v);
  });
  require(std::isfinite(weighted), ErrorCode::hypothesis_failed, "int f'^2/f <v>^2 is infinite");
  FisherTerms out{};
  out.main = integrate_against(f, n, [&](double v) {
    const double s = f.score(v) + v;
    return s * s * theta(n, v, table);
  });
  std::vector<double> terms;
  terms.reserve(samples.size());
  const double nn = static_cast<double>(n);
  for (const auto& x : samples) {
    require(x.n() == n, ErrorCode::shape_mismatch, "sample lives on another sphere");
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * (f.score(x[i]) + x[i]);
    terms.push_back(dot * dot / (nn * nn));
  }
  if (terms.size() >= 2) {
    const auto ms = mean_stderr(terms);
    out.correction = ms.mean;
    out.correction_stderr = ms.std_err;
  } else if (terms.size() == 1) {
    out.correction = terms[0];
  }
  return out;
}

}  // namespace chaoslab::kac

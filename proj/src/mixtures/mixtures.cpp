#include "chaoslab/mixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoslab/error.hpp"
#include "chaoslab/information.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/sobolev.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab::mix {

Mixture::Mixture(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  require(!atoms_.empty(), ErrorCode::invalid_argument, "a mixture needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    require(a.alpha > 0.0 && a.alpha <= 1.0, ErrorCode::invalid_argument, "atom weights must lie in (0, 1]");
    total += a.alpha;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::invalid_argument, "atom weights must sum to 1");
}

Mixture Mixture::combine(double theta, const Mixture& a, const Mixture& b) {
  require(theta > 0.0 && theta < 1.0, ErrorCode::invalid_argument, "theta must lie in (0, 1)");
  std::vector<Atom> atoms;
  for (const auto& x : a.atoms_) atoms.push_back({theta * x.alpha, x.f});
  for (const auto& x : b.atoms_) atoms.push_back({(1.0 - theta) * x.alpha, x.f});
  return Mixture(std::move(atoms));
}

double Mixture::log_marginal(std::span<const double> v) const {
  std::vector<double> terms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    double t = std::log(atoms_[i].alpha);
    for (double x : v) t += atoms_[i].f.log_pdf(x);
    terms[i] = t;
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

std::size_t Mixture::sample(std::span<double> out, Rng& rng) const {
  double u = uniform01(rng);
  std::size_t i = 0;
  while (i + 1 < atoms_.size() && u >= atoms_[i].alpha) {
    u -= atoms_[i].alpha;
    ++i;
  }
  for (auto& x : out) x = atoms_[i].f.sample(rng);
  return i;
}

TensorGrid mixture_marginal(const Mixture& pi, std::size_t j, double half_width, std::size_t n_axis) {
  require(j == 1 || j == 2, ErrorCode::invalid_argument, "gridded marginals cover j in {1, 2}; sample otherwise");
  return TensorGrid::sample(j, half_width, n_axis, [&](std::span<const double> v) {
    double total = 0.0;
    for (const auto& a : pi.atoms()) {
      double p = a.alpha;
      for (double x : v) p *= a.f.pdf(x);
      total += p;
    }
    return total;
  });
}

double level3_entropy(const Mixture& pi) {
  double total = 0.0;
  for (const auto& a : pi.atoms()) {
    const auto h = info::entropy(a.f);
    if (h.infinite) return std::numeric_limits<double>::infinity();
    total += a.alpha * h.value;
  }
  return total;
}

double level3_fisher(const Mixture& pi) {
  double total = 0.0;
  for (const auto& a : pi.atoms()) {
    const auto i = info::fisher(a.f);
    if (i.infinite) return std::numeric_limits<double>::infinity();
    total += a.alpha * i.value;
  }
  return total;
}

EntropyCurve marginal_entropy_curve(const Mixture& pi, const std::vector<int>& js, std::size_t samples,
                                    std::uint64_t seed) {
  constexpr std::size_t batches = 20;
  require(!js.empty() && samples >= batches * 10, ErrorCode::invalid_argument, "need js and at least 200 samples");
  EntropyCurve out;
  out.js = js;
  out.level3 = level3_entropy(pi);
  require(std::isfinite(out.level3), ErrorCode::hypothesis_failed, "an atom has infinite entropy");
  const std::size_t per_batch = samples / batches;
  for (std::size_t t = 0; t < js.size(); ++t) {
    const int j = js[t];
    require(j >= 1 && (t == 0 || j > js[t - 1]), ErrorCode::invalid_argument, "js must be positive and increasing");
    // batch mean of (log pi_j(V) - sum_k log f_I(v_k)) / j, whose expectation is H(pi_j) - level3
    const auto batch = parallel_map(batches, [&](std::size_t b) {
      auto rng = make_rng(seed, (static_cast<std::uint64_t>(j) << 8) + b);
      std::vector<double> v(static_cast<std::size_t>(j));
      double acc = 0.0;
      for (std::size_t r = 0; r < per_batch; ++r) {
        const std::size_t atom = pi.sample(v, rng);
        double own = 0.0;
        for (double x : v) own += pi.atoms()[atom].f.log_pdf(x);
        acc += (pi.log_marginal(v) - own) / j;
      }
      return acc / static_cast<double>(per_batch);
    });
    const auto ms = mean_stderr(batch);
    out.values.push_back(out.level3 + ms.mean);
    out.stderrs.push_back(ms.std_err);
    out.gaps.push_back(-ms.mean);
  }
  for (std::size_t t = 0; t < js.size(); ++t) {
    if (out.values[t] > out.level3 + 3.0 * out.stderrs[t]) out.below_level3 = false;
    if (t > 0) {
      const double slack = 3.0 * std::hypot(out.stderrs[t], out.stderrs[t - 1]);
      if (out.values[t] < out.values[t - 1] - slack) out.monotone = false;
    }
  }
  std::vector<int> fit_js;
  std::vector<double> fit_gaps, fit_se;
  for (std::size_t t = 0; t < js.size(); ++t)
    if (out.gaps[t] > 0.0) {
      fit_js.push_back(js[t]);
      fit_gaps.push_back(out.gaps[t]);
      fit_se.push_back(out.stderrs[t]);
    }
  if (fit_js.size() >= 4) out.gap_fit = loglog_fit(fit_js, fit_gaps, fit_se);
  return out;
}

CauchyProbe definetti_cauchy_probe(const Mixture& pi, const std::vector<int>& ns, double s, std::size_t reps,
                                   std::uint64_t seed) {
  require(s > 0.5, ErrorCode::invalid_argument, "the probe needs s > 1/2 on the line");
  require(reps >= 2, ErrorCode::invalid_argument, "need at least 2 replicas");
  const sobolev::HsKernel kernel(s);
  const double phi0 = kernel.at_zero();

  // E Phi_s(v - v') under pi-averaged rho (x) rho
  double pair_mean = 0.0;
  for (const auto& a : pi.atoms()) {
    const auto& f = a.f;
    if (f.kind() == Density::Kind::gaussian_mixture) {
      // v - v' is the Gaussian mixture of the pairwise component differences; Phi_s is radial
      for (const auto& p : f.components())
        for (const auto& q : f.components()) {
          const double m = p.mean - q.mean, sd = std::hypot(p.sd, q.sd);
          const double reach = std::abs(m) + 12.0 * sd;
          const auto folded = [&](double r) {
            return kernel.radial(r) * (Density::gaussian(m, sd).pdf(r) + Density::gaussian(m, sd).pdf(-r));
          };
          pair_mean += a.alpha * p.weight * q.weight * fixed_gauss(folded, 0.0, reach, 400);
        }
    } else {
      const auto range = f.integration_range();
      const auto inner = [&](double v) {
        return fixed_gauss([&](double w) { return kernel.radial(std::abs(v - w)) * f.pdf(w); }, range.lo, range.hi, 200);
      };
      pair_mean += a.alpha * fixed_gauss([&](double v) { return inner(v) * f.pdf(v); }, range.lo, range.hi, 200);
    }
  }

  CauchyProbe out;
  std::vector<double> values, stderrs;
  for (std::size_t t = 0; t < ns.size(); ++t) {
    const int n = ns[t];
    require(n >= 2, ErrorCode::invalid_argument, "N >= 2 required");
    const auto draws = parallel_map(reps, [&](std::size_t r) {
      auto rng = make_rng(seed, (static_cast<std::uint64_t>(n) << 20) + r);
      std::vector<double> x(static_cast<std::size_t>(n));
      pi.sample(x, rng);
      double u = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) u += kernel.radial(std::abs(x[a] - x[b]));
      u *= 2.0 / (static_cast<double>(n) * (n - 1));
      return (phi0 - u) / n;
    });
    const auto ms = mean_stderr(draws);
    values.push_back(ms.mean);
    stderrs.push_back(ms.std_err);
    out.exact.push_back((phi0 - pair_mean) / n);
    out.bound.push_back(2.0 * phi0 / n);
    if (ms.mean > out.bound.back() + 3.0 * ms.std_err) ++out.violations;
  }
  out.report = loglog_fit(ns, values, stderrs);
  return out;
}

}  // namespace chaoslab::mix

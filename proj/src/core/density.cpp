#include "chaoslab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "chaoslab/error.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// E[X^k] for X ~ N(m, s^2) by m_k = m m_{k-1} + (k-1) s^2 m_{k-2}.
double normal_raw_moment(double m, double s, int k) {
  double prev = 1.0;
  double cur = m;
  if (k == 0) return 1.0;
  for (int j = 2; j <= k; ++j) {
    const double next = m * cur + (j - 1) * s * s * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

double gaussian_pdf(double v) { return std::exp(-0.5 * v * v - kLogSqrt2Pi); }
double gaussian_log_pdf(double v) { return -0.5 * v * v - kLogSqrt2Pi; }

struct Density::Impl {
  Kind kind;
  std::string id;
  std::vector<GaussianComponent> comps;  // gaussian_mixture
  double lo = 0.0, hi = 0.0;             // uniform
  double grid_lo = 0.0, grid_h = 0.0;    // tabulated: cell i is [grid_lo + i h, grid_lo + (i+1) h)
  std::vector<double> cell_pdf;
  std::vector<double> cell_cdf;          // cdf at left edges, size M+1
  std::vector<double> log_weights;
};

Density Density::gaussian(double mean, double sd) {
  std::ostringstream id;
  id << "gaussian(" << mean << "," << sd << ")";
  return gaussian_mixture({{1.0, mean, sd}}, id.str());
}

Density Density::gaussian_mixture(std::vector<GaussianComponent> components, std::string id) {
  require(!components.empty(), ErrorCode::invalid_argument, "mixture needs a component");
  double total = 0.0;
  for (const auto& c : components) {
    require(c.weight > 0.0 && c.sd > 0.0 && std::isfinite(c.mean), ErrorCode::invalid_argument,
            "mixture components need positive weight and sd");
    total += c.weight;
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::gaussian_mixture;
  for (auto& c : components) c.weight /= total;
  impl->comps = std::move(components);
  for (const auto& c : impl->comps) impl->log_weights.push_back(std::log(c.weight));
  if (id.empty()) {
    std::ostringstream os;
    os << "mixture(";
    for (std::size_t i = 0; i < impl->comps.size(); ++i)
      os << (i ? ";" : "") << impl->comps[i].weight << ":" << impl->comps[i].mean << ":" << impl->comps[i].sd;
    os << ")";
    id = os.str();
  }
  impl->id = std::move(id);
  return Density(std::move(impl));
}

Density Density::uniform(double lo, double hi) {
  require(lo < hi, ErrorCode::invalid_argument, "uniform needs lo < hi");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::uniform;
  impl->lo = lo;
  impl->hi = hi;
  std::ostringstream os;
  os << "uniform(" << lo << "," << hi << ")";
  impl->id = os.str();
  return Density(std::move(impl));
}

Density Density::bimodal() {
  const double scale = std::sqrt(1.0 + 0.25);
  return gaussian_mixture({{0.5, -1.0 / scale, 0.5 / scale}, {0.5, 1.0 / scale, 0.5 / scale}}, "bimodal");
}

Density Density::skewed_bimodal() {
  // 0.3*1 + 0.7*(-3/7) = 0; variance = 0.25 + 0.3*1 + 0.7*9/49
  const double var = 0.25 + 0.3 + 0.7 * 9.0 / 49.0;
  const double scale = std::sqrt(var);
  return gaussian_mixture({{0.3, 1.0 / scale, 0.5 / scale}, {0.7, -3.0 / 7.0 / scale, 0.5 / scale}},
                          "skewed-bimodal");
}

Density Density::tabulated(const GridDensity& grid, std::string id) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::tabulated;
  impl->id = std::move(id);
  impl->grid_h = grid.spacing();
  impl->grid_lo = grid.x(0) - 0.5 * impl->grid_h;
  const double mass = grid.mass();
  require(mass > 0.0, ErrorCode::invalid_argument, "grid density has zero mass");
  impl->cell_pdf.resize(grid.n_points());
  impl->cell_cdf.assign(grid.n_points() + 1, 0.0);
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    require(grid.value(i) >= 0.0, ErrorCode::invalid_argument, "grid density must be nonnegative");
    impl->cell_pdf[i] = grid.value(i) / mass;
    impl->cell_cdf[i + 1] = impl->cell_cdf[i] + impl->cell_pdf[i] * impl->grid_h;
  }
  impl->cell_cdf.back() = 1.0;
  return Density(std::move(impl));
}

Density::Kind Density::kind() const noexcept { return impl_->kind; }
const std::string& Density::id() const noexcept { return impl_->id; }

const std::vector<GaussianComponent>& Density::components() const {
  require(impl_->kind == Kind::gaussian_mixture, ErrorCode::invalid_argument, "not a Gaussian mixture");
  return impl_->comps;
}

double Density::log_pdf(double v) const {
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      double best = kNegInf;
      thread_local std::vector<double> terms;
      terms.resize(impl_->comps.size());
      for (std::size_t i = 0; i < impl_->comps.size(); ++i) {
        const auto& c = impl_->comps[i];
        const double z = (v - c.mean) / c.sd;
        terms[i] = impl_->log_weights[i] - 0.5 * z * z - std::log(c.sd) - kLogSqrt2Pi;
        best = std::max(best, terms[i]);
      }
      double acc = 0.0;
      for (double t : terms) acc += std::exp(t - best);
      return best + std::log(acc);
    }
    case Kind::uniform:
      return (v >= impl_->lo && v <= impl_->hi) ? -std::log(impl_->hi - impl_->lo) : kNegInf;
    case Kind::tabulated: {
      const double p = pdf(v);
      return p > 0.0 ? std::log(p) : kNegInf;
    }
  }
  return kNegInf;
}

double Density::pdf(double v) const {
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      if (impl_->comps.size() == 1) {
        const auto& c = impl_->comps[0];
        const double z = (v - c.mean) / c.sd;
        return std::exp(-0.5 * z * z - kLogSqrt2Pi) / c.sd;
      }
      return std::exp(log_pdf(v));
    }
    case Kind::uniform:
      return (v >= impl_->lo && v <= impl_->hi) ? 1.0 / (impl_->hi - impl_->lo) : 0.0;
    case Kind::tabulated: {
      const double pos = (v - impl_->grid_lo) / impl_->grid_h;
      if (pos < 0.0 || pos >= static_cast<double>(impl_->cell_pdf.size())) return 0.0;
      return impl_->cell_pdf[static_cast<std::size_t>(pos)];
    }
  }
  return 0.0;
}

double Density::score(double v) const {
  if (impl_->kind != Kind::gaussian_mixture) return 0.0;
  const auto& comps = impl_->comps;
  if (comps.size() == 1) return -(v - comps[0].mean) / (comps[0].sd * comps[0].sd);
  const double lp = log_pdf(v);
  double s = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    const double z = (v - c.mean) / c.sd;
    const double resp = std::exp(impl_->log_weights[i] - 0.5 * z * z - std::log(c.sd) - kLogSqrt2Pi - lp);
    s += resp * (-(v - c.mean) / (c.sd * c.sd));
  }
  return s;
}

double Density::cdf(double v) const {
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      double acc = 0.0;
      for (const auto& c : impl_->comps) acc += c.weight * normal_cdf((v - c.mean) / c.sd);
      return std::clamp(acc, 0.0, 1.0);
    }
    case Kind::uniform:
      return std::clamp((v - impl_->lo) / (impl_->hi - impl_->lo), 0.0, 1.0);
    case Kind::tabulated: {
      const double pos = (v - impl_->grid_lo) / impl_->grid_h;
      if (pos <= 0.0) return 0.0;
      const auto m = impl_->cell_pdf.size();
      if (pos >= static_cast<double>(m)) return 1.0;
      const auto i = static_cast<std::size_t>(pos);
      return impl_->cell_cdf[i] + (pos - static_cast<double>(i)) * impl_->cell_pdf[i] * impl_->grid_h;
    }
  }
  return 0.0;
}

double Density::partial_moment(double a, double b, int k) const {
  require(k >= 0 && k <= 2, ErrorCode::invalid_argument, "partial moments are available for k <= 2");
  if (!(b > a)) return 0.0;
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      double acc = 0.0;
      for (const auto& c : impl_->comps) {
        const double za = (a - c.mean) / c.sd, zb = (b - c.mean) / c.sd;
        // mass from the tail nearest to the interval, to avoid cancellation
        const double i0 = za > 0.0 ? normal_cdf(-za) - normal_cdf(-zb) : normal_cdf(zb) - normal_cdf(za);
        const double pa = std::isfinite(za) ? gaussian_pdf(za) : 0.0;
        const double pb = std::isfinite(zb) ? gaussian_pdf(zb) : 0.0;
        const double i1 = pa - pb;
        const double i2 = i0 + (std::isfinite(za) ? za * pa : 0.0) - (std::isfinite(zb) ? zb * pb : 0.0);
        const double m = c.mean, s = c.sd;
        const double term = k == 0 ? i0 : k == 1 ? m * i0 + s * i1 : m * m * i0 + 2.0 * m * s * i1 + s * s * i2;
        acc += c.weight * term;
      }
      return acc;
    }
    case Kind::uniform: {
      const double lo = std::max(a, impl_->lo), hi = std::min(b, impl_->hi);
      if (!(hi > lo)) return 0.0;
      const double kk = k + 1.0;
      return (std::pow(hi, kk) - std::pow(lo, kk)) / kk / (impl_->hi - impl_->lo);
    }
    case Kind::tabulated: {
      const double h = impl_->grid_h;
      const auto m = impl_->cell_pdf.size();
      const double first = std::max(0.0, std::floor((a - impl_->grid_lo) / h));
      double acc = 0.0;
      for (auto i = static_cast<std::size_t>(first); i < m; ++i) {
        const double left = impl_->grid_lo + static_cast<double>(i) * h;
        if (left >= b) break;
        const double lo = std::max(a, left), hi = std::min(b, left + h);
        if (hi > lo) {
          const double kk = k + 1.0;
          acc += impl_->cell_pdf[i] * (std::pow(hi, kk) - std::pow(lo, kk)) / kk;
        }
      }
      return acc;
    }
  }
  return 0.0;
}

double Density::quantile(double p) const {
  require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "quantile level must lie in (0,1)");
  if (impl_->kind == Kind::uniform) return impl_->lo + p * (impl_->hi - impl_->lo);
  if (impl_->kind == Kind::tabulated) {
    const auto& cdf = impl_->cell_cdf;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), p);
    std::size_t i = static_cast<std::size_t>(std::distance(cdf.begin(), it));
    i = std::clamp<std::size_t>(i, 1, impl_->cell_pdf.size()) - 1;
    while (impl_->cell_pdf[i] <= 0.0 && i + 1 < impl_->cell_pdf.size()) ++i;
    const double frac = (p - cdf[i]) / (impl_->cell_pdf[i] * impl_->grid_h);
    return impl_->grid_lo + (static_cast<double>(i) + std::clamp(frac, 0.0, 1.0)) * impl_->grid_h;
  }
  Interval r = integration_range();
  double lo = r.lo - 40.0 * (r.hi - r.lo);
  double hi = r.hi + 40.0 * (r.hi - r.lo);
  double x = 0.5 * (r.lo + r.hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double c = cdf(x) - p;
    if (c > 0) hi = x; else lo = x;
    const double d = pdf(x);
    double next = (d > 1e-300) ? x - c / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double Density::sample(Rng& rng) const {
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      const auto& comps = impl_->comps;
      std::size_t i = 0;
      if (comps.size() > 1) {
        double u = uniform01(rng);
        while (i + 1 < comps.size() && u >= comps[i].weight) {
          u -= comps[i].weight;
          ++i;
        }
      }
      return comps[i].mean + comps[i].sd * standard_normal(rng);
    }
    case Kind::uniform:
      return impl_->lo + (impl_->hi - impl_->lo) * uniform01(rng);
    case Kind::tabulated: {
      double u = uniform01(rng);
      u = std::clamp(u, 1e-300, 1.0 - 1e-16);
      return quantile(u);
    }
  }
  return 0.0;
}

std::optional<double> Density::declared_moment(int k) const {
  if (k < 0) return std::nullopt;
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      double acc = 0.0;
      for (const auto& c : impl_->comps) acc += c.weight * normal_raw_moment(c.mean, c.sd, k);
      return acc;
    }
    case Kind::uniform: {
      const double a = impl_->lo, b = impl_->hi;
      return (std::pow(b, k + 1) - std::pow(a, k + 1)) / ((k + 1) * (b - a));
    }
    case Kind::tabulated:
      return std::nullopt;
  }
  return std::nullopt;
}

double Density::moment(int k) const {
  if (auto m = declared_moment(k)) return *m;
  return expect(*this, [k](double v) { return std::pow(v, k); });
}

double Density::abs_moment(double k) const {
  // |v|^k has a kink at 0 for small k; integrate each side separately
  const Interval r = integration_range();
  const auto fn = [&](double v) { return std::pow(std::abs(v), k) * pdf(v); };
  if (r.lo >= 0.0 || r.hi <= 0.0 || kind() == Kind::tabulated) return expect(*this, [k](double v) { return std::pow(std::abs(v), k); }, 1e-11);
  return integrate_panels(fn, r.lo, 0.0, 32, 1e-11) + integrate_panels(fn, 0.0, r.hi, 32, 1e-11);
}

double Density::variance() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

Interval Density::support() const noexcept {
  switch (impl_->kind) {
    case Kind::gaussian_mixture:
      return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    case Kind::uniform:
      return {impl_->lo, impl_->hi};
    case Kind::tabulated:
      return {impl_->grid_lo, impl_->grid_lo + impl_->grid_h * static_cast<double>(impl_->cell_pdf.size())};
  }
  return {0.0, 0.0};
}

Interval Density::integration_range() const noexcept {
  if (impl_->kind != Kind::gaussian_mixture) return support();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& c : impl_->comps) {
    lo = std::min(lo, c.mean - 12.0 * c.sd);
    hi = std::max(hi, c.mean + 12.0 * c.sd);
  }
  return {lo, hi};
}

bool Density::smooth() const noexcept { return impl_->kind == Kind::gaussian_mixture; }

Density Density::affine(double shift, double scale) const {
  require(scale != 0.0, ErrorCode::invalid_argument, "affine map needs nonzero scale");
  switch (impl_->kind) {
    case Kind::gaussian_mixture: {
      auto comps = impl_->comps;
      for (auto& c : comps) {
        c.mean = shift + scale * c.mean;
        c.sd = std::abs(scale) * c.sd;
      }
      return gaussian_mixture(std::move(comps));
    }
    case Kind::uniform: {
      const double a = shift + scale * impl_->lo, b = shift + scale * impl_->hi;
      return uniform(std::min(a, b), std::max(a, b));
    }
    case Kind::tabulated: {
      auto impl = std::make_shared<Impl>(*impl_);
      impl->id = impl_->id + "@" + std::to_string(shift) + "," + std::to_string(scale);
      impl->grid_h = std::abs(scale) * impl_->grid_h;
      const double far_edge = impl_->grid_lo + static_cast<double>(impl_->cell_pdf.size()) * impl_->grid_h;
      impl->grid_lo = shift + scale * (scale > 0.0 ? impl_->grid_lo : far_edge);
      if (scale < 0.0) std::reverse(impl->cell_pdf.begin(), impl->cell_pdf.end());
      for (std::size_t i = 0; i < impl->cell_pdf.size(); ++i) {
        impl->cell_pdf[i] /= std::abs(scale);
        impl->cell_cdf[i + 1] = impl->cell_cdf[i] + impl->cell_pdf[i] * impl->grid_h;
      }
      impl->cell_cdf.back() = 1.0;
      return Density(std::move(impl));
    }
  }
  fail(ErrorCode::invalid_argument, "unknown density kind");
}

std::size_t Density::cells() const noexcept {
  return impl_->kind == Kind::tabulated ? impl_->cell_pdf.size() : 0;
}

}  // namespace chaoslab

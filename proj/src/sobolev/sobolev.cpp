#include "chaoslab/sobolev.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::sobolev {

namespace {

double log_prefactor(double s, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return 0.5 * d * std::log(2.0 * std::numbers::pi) + (1.0 - s) * std::log(2.0) - std::lgamma(s);
}

// d/dr Phi_s(r) = -C r^nu K_{nu-1}(r).
double phi_slope(double s, std::size_t dim, double r) {
  const double nu = s - 0.5 * static_cast<double>(dim);
  if (r <= 0.0) return nu > 0.5 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double k = boost::math::cyl_bessel_k(std::abs(nu - 1.0), r);
  return -std::exp(log_prefactor(s, dim) + nu * std::log(r)) * k;
}

}  // namespace

double phi_closed_form(double s, std::size_t dim, double r) {
  const double d = static_cast<double>(dim);
  const double nu = s - 0.5 * d;
  require(nu > 0.0, ErrorCode::invalid_argument, "Phi_s needs s > d/2");
  r = std::abs(r);
  if (r == 0.0) return std::pow(std::numbers::pi, 0.5 * d) * std::exp(std::lgamma(nu) - std::lgamma(s));
  if (r > 700.0) return 0.0;
  return std::exp(log_prefactor(s, dim) + nu * std::log(r)) * boost::math::cyl_bessel_k(nu, r);
}

HsKernel::HsKernel(double s, std::size_t dim, std::size_t points, double r_max)
    : s_(s), dim_(dim), r_max_(r_max) {
  require(dim >= 1 && s > 0.5 * static_cast<double>(dim), ErrorCode::invalid_argument, "H^{-s} needs s > d/2");
  require(points >= 16 && r_max > 0.0, ErrorCode::invalid_argument, "kernel table too small");
  const double d = static_cast<double>(dim);
  phi0_ = phi_closed_form(s, dim, 0.0);
  if (s > 0.5 * (d + 1.0)) {
    const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
    lip_ = sphere * 0.5 * boost::math::beta(0.5 * (d + 1.0), s - 0.5 * (d + 1.0));
  } else {
    lip_ = std::numeric_limits<double>::infinity();
  }
  tail_power_ = s - 0.5 * d - 0.5;
  r_.resize(points);
  v_.resize(points);
  dv_.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    r_[i] = r_max * t * t;  // quadratic spacing, fine near the origin
    v_[i] = phi_closed_form(s, dim, r_[i]);
    dv_[i] = phi_slope(s, dim, r_[i]);
  }
}

double HsKernel::radial(double r) const {
  r = std::abs(r);
  require(std::isfinite(r), ErrorCode::invalid_argument, "kernel argument is not finite");
  if (r >= r_max_) {
    // K_nu(r) ~ sqrt(pi / 2r) e^{-r}: Phi decays like r^{nu - 1/2} e^{-r}
    return v_.back() * std::exp(tail_power_ * std::log(r / r_max_) - (r - r_max_));
  }
  const double t = std::sqrt(r / r_max_) * static_cast<double>(r_.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(t), r_.size() - 2);
  const double h = r_[i + 1] - r_[i];
  const double u = (r - r_[i]) / h;
  if (i == 0 && !std::isfinite(dv_[0])) return v_[0] + u * (v_[1] - v_[0]);
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * v_[i] + (u3 - 2 * u2 + u) * h * dv_[i] + (-2 * u3 + 3 * u2) * v_[i + 1] +
         (u3 - u2) * h * dv_[i + 1];
}

double HsKernel::operator()(std::span<const double> z) const {
  require(z.size() == dim_, ErrorCode::shape_mismatch, "kernel argument has the wrong dimension");
  double sq = 0.0;
  for (double c : z) sq += c * c;
  return radial(std::sqrt(sq));
}

double phi_s(std::span<const double> z, const HsKernel& kernel) { return kernel(z); }

double hs_dist_sq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const HsKernel& kernel) {
  require(mu.dim() == nu.dim() && mu.dim() == kernel.dim(), ErrorCode::shape_mismatch,
          "measures and kernel differ in dimension");
  const std::size_t d = mu.dim();
  std::vector<double> pts, w;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    pts.insert(pts.end(), mu.point(i).begin(), mu.point(i).end());
    w.push_back(mu.weight(i));
  }
  for (std::size_t i = 0; i < nu.size(); ++i) {
    pts.insert(pts.end(), nu.point(i).begin(), nu.point(i).end());
    w.push_back(-nu.weight(i));
  }
  const std::size_t n = w.size();
  std::vector<double> z(d);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    total += w[a] * w[a] * kernel.at_zero();
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = 0; c < d; ++c) z[c] = pts[a * d + c] - pts[b * d + c];
      total += 2.0 * w[a] * w[b] * kernel(z);
    }
  }
  if (total < -1e-9) fail(ErrorCode::non_convergence, "negative H^{-s} norm: kernel table is corrupt");
  return std::max(0.0, total);
}

BridgeCheck hs_w1_bridge_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double k, double s) {
  require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::shape_mismatch, "the bridge check is one-dimensional");
  require(s >= 1.0 && k > 0.0, ErrorCode::invalid_argument, "bridge check needs s >= 1 and k > 0");
  const HsKernel kernel(s, 1);
  BridgeCheck out{};
  out.w1 = transport::w1_line(mu, nu, 1.0);
  out.hs_norm = std::sqrt(hs_dist_sq(mu, nu, kernel));
  double mk = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) mk += mu.weight(i) * std::pow(std::abs(mu.point(i)[0]), k);
  for (std::size_t i = 0; i < nu.size(); ++i) mk += nu.weight(i) * std::pow(std::abs(nu.point(i)[0]), k);

  const double lip = std::isfinite(kernel.lipschitz_bound()) ? kernel.lipschitz_bound()
                                                             : std::numeric_limits<double>::infinity();
  out.hs_bound = std::isfinite(lip) ? std::sqrt(2.0 * std::max(lip, kernel.at_zero()) * out.w1)
                                    : std::numeric_limits<double>::infinity();

  const auto amplitude = [s](double eps) {
    const double t_star = (s - 1.0) / (eps * eps) - 1.0;
    if (t_star <= 0.0) return 1.0;
    return std::exp(0.5 * ((s - 1.0) * std::log1p(t_star) - eps * eps * t_star));
  };
  out.bound = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= 160; ++a) {
    const double radius = std::pow(10.0, -1.0 + a * 0.025);  // 0.1 .. 1e3
    for (int b = 0; b <= 160; ++b) {
      const double eps = std::pow(10.0, -6.0 + b * 0.0375);  // 1e-6 .. 1
      const double value = 3.0 * std::sqrt(2.0 / std::numbers::pi) * eps + mk / (2.0 * std::pow(radius, k)) +
                           amplitude(eps) * std::sqrt((2.5 * radius + 5.0) / (2.0 * std::numbers::pi)) * out.hs_norm;
      if (value < out.bound) {
        out.bound = value;
        out.best_radius = radius;
        out.best_eps = eps;
      }
    }
  }
  // The cost is bounded by 1, so W1 <= 1 trivially.
  out.bound = std::min(out.bound, 1.0);
  return out;
}

}  // namespace chaoslab::sobolev

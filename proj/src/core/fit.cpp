#include "chaoslab/fit.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "chaoslab/error.hpp"

namespace chaoslab {

RateReport loglog_fit(const std::vector<int>& ns, const std::vector<double>& values, std::vector<double> stderrs) {
  require(ns.size() == values.size(), ErrorCode::shape_mismatch, "ns and values differ in length");
  require(ns.size() >= 4, ErrorCode::invalid_argument, "a rate fit needs at least 4 points");
  if (stderrs.empty()) stderrs.assign(values.size(), 0.0);
  require(stderrs.size() == values.size(), ErrorCode::shape_mismatch, "stderrs length mismatch");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    require(ns[i] > 0, ErrorCode::invalid_argument, "ns must be positive");
    require(i == 0 || ns[i] > ns[i - 1], ErrorCode::invalid_argument, "ns must be strictly increasing");
    require(values[i] > 0.0 && std::isfinite(values[i]), ErrorCode::invalid_argument,
            "cannot fit a power law through nonpositive value " + std::to_string(values[i]));
  }
  const double n = static_cast<double>(ns.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += std::log(static_cast<double>(ns[i]));
    sy += std::log(values[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double dx = std::log(static_cast<double>(ns[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  RateReport r;
  r.ns = ns;
  r.values = values;
  r.stderrs = std::move(stderrs);
  r.fitted_slope = sxy / sxx;
  r.fitted_intercept = my - r.fitted_slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double res = std::log(values[i]) - r.fitted_intercept - r.fitted_slope * std::log(static_cast<double>(ns[i]));
    sse += res * res;
  }
  r.residual_rms = std::sqrt(sse / n);
  const double se = std::sqrt(sse / (n - 2.0) / sxx);
  const boost::math::students_t t(n - 2.0);
  const double q = boost::math::quantile(boost::math::complement(t, 0.025));
  r.slope_ci = {r.fitted_slope - q * se, r.fitted_slope + q * se};
  return r;
}

}  // namespace chaoslab

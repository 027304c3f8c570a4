#include "chaoslab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "chaoslab/density.hpp"
#include "chaoslab/error.hpp"

namespace chaoslab {

double integrate(const RealFn& f, double a, double b, double tol, unsigned max_depth) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, 1e-12, &error, &l1);
  if (!std::isfinite(value)) throw QuadratureError("integrand produced a non-finite value", value, error);
  if (error > tol && error > 1e-11 * l1)
    throw QuadratureError("error estimate " + std::to_string(error) + " above tolerance " + std::to_string(tol),
                          value, error);
  return value;
}

double integrate_panels(const RealFn& f, double a, double b, std::size_t panels, double tol) {
  require(panels >= 1, ErrorCode::invalid_argument, "need at least one panel");
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  const double panel_tol = tol / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + static_cast<double>(k) * width;
    const double hi = (k + 1 == panels) ? b : lo + width;
    total += integrate(f, lo, hi, panel_tol);
  }
  return total;
}

double fixed_gauss(const RealFn& f, double a, double b, std::size_t panels) {
  require(panels >= 1, ErrorCode::invalid_argument, "need at least one panel");
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + static_cast<double>(k) * width;
    const double hi = (k + 1 == panels) ? b : lo + width;
    total += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
  }
  return total;
}

namespace {

std::size_t panel_count(const Density& f) {
  const Interval range = f.integration_range();
  double scale = range.width();
  if (f.kind() == Density::Kind::gaussian_mixture) {
    for (const auto& c : f.components()) scale = std::min(scale, c.sd);
  } else if (f.kind() == Density::Kind::tabulated) {
    scale = range.width() / 64.0;
  }
  const double count = std::ceil(range.width() / scale);
  return static_cast<std::size_t>(std::clamp(count, 1.0, 512.0));
}

}  // namespace

double integrate_over(const Density& f, const RealFn& fn, double tol) {
  const Interval range = f.integration_range();
  // piecewise-constant densities: one Gauss panel per cell, where the integrand is smooth
  if (f.kind() == Density::Kind::tabulated) return fixed_gauss(fn, range.lo, range.hi, f.cells());
  return integrate_panels(fn, range.lo, range.hi, panel_count(f), tol);
}

double expect(const Density& f, const RealFn& fn, double tol) {
  return integrate_over(f, [&](double v) { return fn(v) * f.pdf(v); }, tol);
}

}  // namespace chaoslab

#pragma once

#include <utility>
#include <vector>

namespace chaoslab {

/// A convergence curve and its least-squares power-law fit log(value) = intercept + slope*log(N).
struct RateReport {
  std::vector<int> ns;
  std::vector<double> values;
  std::vector<double> stderrs;
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  std::pair<double, double> slope_ci{0.0, 0.0};
  double residual_rms = 0.0;
};

/// Requires at least 4 points, strictly increasing ns and positive values.
/// The slope interval is the two-sided 95% Student-t interval of the OLS slope.
RateReport loglog_fit(const std::vector<int>& ns, const std::vector<double>& values,
                      std::vector<double> stderrs = {});

}  // namespace chaoslab

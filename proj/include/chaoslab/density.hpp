#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chaoslab/rng.hpp"

namespace chaoslab {

class GridDensity;

struct Interval {
  double lo;
  double hi;
  bool bounded() const noexcept;
  double width() const noexcept { return hi - lo; }
};

struct GaussianComponent {
  double weight;
  double mean;
  double sd;
};

/// Analytic one-dimensional probability density: Gaussian mixtures, uniform laws and
/// densities read from a grid. Cheap to copy; the parameters are shared and immutable.
class Density {
 public:
  enum class Kind { gaussian_mixture, uniform, tabulated };

  static Density gaussian(double mean = 0.0, double sd = 1.0);
  static Density gaussian_mixture(std::vector<GaussianComponent> components, std::string id = {});
  static Density uniform(double lo, double hi);
  /// 1/2 N(-1, 0.5^2) + 1/2 N(1, 0.5^2), rescaled to mean 0 and variance 1.
  static Density bimodal();
  /// Centered, skewed two-bump law 0.3 N(1, 0.5^2) + 0.7 N(-3/7, 0.5^2), rescaled to variance 1.
  static Density skewed_bimodal();
  /// Piecewise-constant density read off a grid (normalized on construction).
  static Density tabulated(const GridDensity& grid, std::string id = "custom");

  Kind kind() const noexcept;
  const std::string& id() const noexcept;

  double pdf(double v) const;
  double log_pdf(double v) const;
  /// d/dv log pdf; zero outside the support of non-smooth densities.
  double score(double v) const;
  double cdf(double v) const;
  /// Truncated moment int_a^b v^k f(v) dv for k in {0, 1, 2}, in closed form.
  double partial_moment(double a, double b, int k) const;
  double quantile(double p) const;
  double sample(Rng& rng) const;

  /// E[X^k] when known in closed form.
  std::optional<double> declared_moment(int k) const;
  /// Raw moment E[X^k] (closed form when declared, else quadrature).
  double moment(int k) const;
  /// E|X|^k by quadrature.
  double abs_moment(double k) const;
  double mean() const { return moment(1); }
  double variance() const;

  Interval support() const noexcept;
  /// Support truncated at 12 standard deviations for the unbounded families.
  Interval integration_range() const noexcept;
  /// Number of grid cells of a tabulated density, 0 for the other kinds.
  std::size_t cells() const noexcept;
  /// True when the density is C^1 on the real line.
  bool smooth() const noexcept;

  const std::vector<GaussianComponent>& components() const;

  /// Density of a + b X.
  Density affine(double shift, double scale) const;

 private:
  struct Impl;
  explicit Density(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Standard Gaussian density value.
double gaussian_pdf(double v);
double gaussian_log_pdf(double v);

}  // namespace chaoslab

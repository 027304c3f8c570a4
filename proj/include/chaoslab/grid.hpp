#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoslab/density.hpp"

namespace chaoslab {

/// Density values on the uniform grid x_i = -L + i*h, i = 0..M-1, h = 2L/M, M a power of two.
/// Interpreted as the lattice measure sum_i h*values[i]*delta_{x_i}.
class GridDensity {
 public:
  GridDensity(double half_width, std::vector<double> values);

  /// Cell-averaged discretization: values[i] = P(cell around x_i) / h, computed from the cdf.
  static GridDensity from_density(const Density& f, double half_width, std::size_t n_points);
  /// Same, for the affine image s*f(m + s*y) of f.
  static GridDensity from_density(const Density& f, double half_width, std::size_t n_points,
                                  double shift, double scale);
  /// Discretization of an affine image of f whose lattice mean is 0 and variance 1.
  static GridDensity standardized(const Density& f, double half_width = 12.0, std::size_t n_points = 1u << 14);

  double half_width() const noexcept { return half_width_; }
  std::size_t n_points() const noexcept { return values_.size(); }
  double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(values_.size()); }
  double x(std::size_t i) const noexcept { return -half_width_ + static_cast<double>(i) * spacing(); }
  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i) const noexcept { return values_[i]; }

  double mass() const;
  double mean() const;
  double variance() const;
  /// Linear interpolation; zero outside the grid.
  double at(double x) const;
  GridDensity normalized() const;

 private:
  double half_width_;
  std::vector<double> values_;
};

/// Values of a density on E^j sampled on the tensor grid of a GridDensity axis.
/// Index order is row-major with the first coordinate slowest.
class TensorGrid {
 public:
  TensorGrid(std::size_t rank, double half_width, std::size_t n_axis, std::vector<double> values);

  /// Product density f_1(x_1)...f_j(x_j) from pointwise values (not cell averages).
  static TensorGrid product(const std::vector<Density>& factors, double half_width, std::size_t n_axis);
  /// Pointwise samples of f(x) for an arbitrary function on E^j.
  template <class Fn>
  static TensorGrid sample(std::size_t rank, double half_width, std::size_t n_axis, Fn&& fn);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t n_axis() const noexcept { return n_axis_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(n_axis_ - 1); }
  double x(std::size_t i) const noexcept { return -half_width_ + static_cast<double>(i) * spacing(); }
  std::span<const double> values() const noexcept { return values_; }
  double cell_volume() const;

  /// Marginal over the first `j` coordinates (integrating the rest out).
  TensorGrid marginal(std::size_t j) const;
  double mass() const;

 private:
  std::size_t rank_;
  double half_width_;
  std::size_t n_axis_;
  std::vector<double> values_;
};

template <class Fn>
TensorGrid TensorGrid::sample(std::size_t rank, double half_width, std::size_t n_axis, Fn&& fn) {
  std::size_t total = 1;
  for (std::size_t r = 0; r < rank; ++r) total *= n_axis;
  std::vector<double> values(total);
  std::vector<double> point(rank);
  const double h = 2.0 * half_width / static_cast<double>(n_axis - 1);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t r = rank; r-- > 0;) {
      point[r] = -half_width + static_cast<double>(rem % n_axis) * h;
      rem /= n_axis;
    }
    values[flat] = fn(std::span<const double>(point));
  }
  return TensorGrid(rank, half_width, n_axis, std::move(values));
}

}  // namespace chaoslab

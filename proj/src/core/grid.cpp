#include "chaoslab/grid.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "chaoslab/error.hpp"

namespace chaoslab {

GridDensity::GridDensity(double half_width, std::vector<double> values)
    : half_width_(half_width), values_(std::move(values)) {
  require(half_width_ > 0.0, ErrorCode::invalid_argument, "grid half width must be positive");
  require(values_.size() >= 2 && std::has_single_bit(values_.size()), ErrorCode::invalid_argument,
          "grid size must be a power of two");
  for (double v : values_)
    require(std::isfinite(v), ErrorCode::invalid_argument, "grid values must be finite");
}

GridDensity GridDensity::from_density(const Density& f, double half_width, std::size_t n_points) {
  return from_density(f, half_width, n_points, 0.0, 1.0);
}

GridDensity GridDensity::from_density(const Density& f, double half_width, std::size_t n_points, double shift,
                                      double scale) {
  require(scale > 0.0, ErrorCode::invalid_argument, "scale must be positive");
  std::vector<double> values(n_points);
  const double h = 2.0 * half_width / static_cast<double>(n_points);
  double prev = f.cdf(shift + scale * (-half_width - 0.5 * h));
  for (std::size_t i = 0; i < n_points; ++i) {
    const double right = -half_width + (static_cast<double>(i) + 0.5) * h;
    const double next = f.cdf(shift + scale * right);
    values[i] = std::max(0.0, next - prev) / h;
    prev = next;
  }
  return GridDensity(half_width, std::move(values)).normalized();
}

GridDensity GridDensity::standardized(const Density& f, double half_width, std::size_t n_points) {
  double shift = f.mean();
  double scale = std::sqrt(f.variance());
  GridDensity g = from_density(f, half_width, n_points, shift, scale);
  for (int iter = 0; iter < 20; ++iter) {
    const double m = g.mean();
    const double v = g.variance();
    if (std::abs(m) < 1e-13 && std::abs(v - 1.0) < 1e-13) break;
    shift += scale * m;
    scale *= std::sqrt(v);
    g = from_density(f, half_width, n_points, shift, scale);
  }
  return g;
}

double GridDensity::mass() const { return spacing() * std::accumulate(values_.begin(), values_.end(), 0.0); }

double GridDensity::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += x(i) * values_[i];
  return acc * spacing() / mass();
}

double GridDensity::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += (x(i) - m) * (x(i) - m) * values_[i];
  return acc * spacing() / mass();
}

double GridDensity::at(double xv) const {
  const double pos = (xv + half_width_) / spacing();
  if (pos < 0.0 || pos > static_cast<double>(values_.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= values_.size()) return values_.back();
  const double t = pos - static_cast<double>(i);
  return (1.0 - t) * values_[i] + t * values_[i + 1];
}

GridDensity GridDensity::normalized() const {
  const double m = mass();
  require(m > 0.0, ErrorCode::degenerate_input, "grid density has zero mass");
  std::vector<double> v(values_);
  for (double& x : v) x /= m;
  return GridDensity(half_width_, std::move(v));
}

TensorGrid::TensorGrid(std::size_t rank, double half_width, std::size_t n_axis, std::vector<double> values)
    : rank_(rank), half_width_(half_width), n_axis_(n_axis), values_(std::move(values)) {
  require(rank_ >= 1 && n_axis_ >= 3 && half_width_ > 0.0, ErrorCode::invalid_argument, "bad tensor grid shape");
  std::size_t total = 1;
  for (std::size_t r = 0; r < rank_; ++r) total *= n_axis_;
  require(values_.size() == total, ErrorCode::shape_mismatch, "tensor grid value count mismatch");
}

TensorGrid TensorGrid::product(const std::vector<Density>& factors, double half_width, std::size_t n_axis) {
  require(!factors.empty(), ErrorCode::invalid_argument, "product needs factors");
  return sample(factors.size(), half_width, n_axis, [&](std::span<const double> p) {
    double v = 1.0;
    for (std::size_t r = 0; r < factors.size(); ++r) v *= factors[r].pdf(p[r]);
    return v;
  });
}

double TensorGrid::cell_volume() const { return std::pow(spacing(), static_cast<double>(rank_)); }

double TensorGrid::mass() const {
  return cell_volume() * std::accumulate(values_.begin(), values_.end(), 0.0);
}

TensorGrid TensorGrid::marginal(std::size_t j) const {
  require(j >= 1 && j <= rank_, ErrorCode::invalid_argument, "marginal order out of range");
  if (j == rank_) return *this;
  std::size_t outer = 1;
  for (std::size_t r = 0; r < j; ++r) outer *= n_axis_;
  const std::size_t inner = values_.size() / outer;
  const double w = std::pow(spacing(), static_cast<double>(rank_ - j));
  std::vector<double> out(outer, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    double acc = 0.0;
    for (std::size_t k = 0; k < inner; ++k) acc += values_[o * inner + k];
    out[o] = acc * w;
  }
  return TensorGrid(j, half_width_, n_axis_, std::move(out));
}

}  // namespace chaoslab

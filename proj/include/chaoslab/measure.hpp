#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chaoslab {

/// One N-particle state X = (x_1, ..., x_N) in E^N, E = R^d, stored flat.
class Configuration {
 public:
  Configuration(std::size_t dim, std::vector<double> coords);

  static Configuration scalar(std::vector<double> coords) { return Configuration(1, std::move(coords)); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t n_particles() const noexcept { return coords_.size() / dim_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> particle(std::size_t i) const noexcept {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Finitely many weighted atoms on E^j. `block` is d, so a point has j*d coordinates.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, std::size_t block, std::vector<double> points,
                  std::vector<double> weights);

  /// Uniform weights over the given points.
  static DiscreteMeasure uniform(std::size_t dim, std::size_t block, std::vector<double> points);
  static DiscreteMeasure dirac(std::vector<double> point, std::size_t block = 1);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t block() const noexcept { return block_; }
  std::size_t n_blocks() const noexcept { return dim_ / block_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> point(std::size_t i) const noexcept {
    return std::span<const double>(points_).subspan(i * dim_, dim_);
  }
  double weight(std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> points() const noexcept { return points_; }

  /// Sorted, with atoms whose coordinates agree within `tol` merged into one.
  DiscreteMeasure merged(double tol = kMergeTolerance) const;

  /// Marginal on the first `j` blocks.
  DiscreteMeasure marginal(std::size_t j) const;

  static constexpr double kMergeTolerance = 1e-12;

 private:
  std::size_t dim_;
  std::size_t block_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Tensor product a (x) b on E^{j_a + j_b}; both must share the block size.
DiscreteMeasure tensor_product(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// f^{(x) n}; refuses to build more than `max_atoms` atoms.
DiscreteMeasure tensor_power(const DiscreteMeasure& f, std::size_t n, std::size_t max_atoms = 100000);

/// Empirical measure of a configuration. group = 1 gives mu^N_X on E with N atoms of
/// weight 1/N. group = j > 1 gives the law on E^j of (x_{s(1)}, ..., x_{s(j)}) for a
/// uniformly random injective index map s, i.e. the j-marginal of the symmetrized delta_X.
DiscreteMeasure make_empirical(const Configuration& x, std::size_t group = 1);

}  // namespace chaoslab

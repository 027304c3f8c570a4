#include "chaoslab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chaoslab/error.hpp"

namespace chaoslab {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Configuration::Configuration(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  require(dim_ > 0, ErrorCode::invalid_argument, "configuration dimension must be positive");
  require(!coords_.empty() && coords_.size() % dim_ == 0, ErrorCode::shape_mismatch,
          "configuration length " + std::to_string(coords_.size()) + " is not a positive multiple of d=" +
              std::to_string(dim_));
  require(all_finite(coords_), ErrorCode::invalid_argument, "configuration has non-finite entries");
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::size_t block, std::vector<double> points,
                                 std::vector<double> weights)
    : dim_(dim), block_(block), points_(std::move(points)), weights_(std::move(weights)) {
  require(dim_ > 0 && block_ > 0 && dim_ % block_ == 0, ErrorCode::invalid_argument,
          "measure dimension must be a positive multiple of the block size");
  require(!weights_.empty(), ErrorCode::invalid_argument, "measure needs at least one atom");
  require(points_.size() == weights_.size() * dim_, ErrorCode::shape_mismatch,
          "point array does not match atom count times dimension");
  require(all_finite(points_), ErrorCode::invalid_argument, "atom points must be finite");
  double total = 0.0;
  for (double w : weights_) {
    require(w >= 0.0 && std::isfinite(w), ErrorCode::invalid_argument, "weights must be nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12 * std::max<double>(1.0, static_cast<double>(weights_.size()) / 1e3),
          ErrorCode::invalid_argument, "weights must sum to 1, got " + std::to_string(total));
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t dim, std::size_t block, std::vector<double> points) {
  require(dim > 0 && points.size() % dim == 0 && !points.empty(), ErrorCode::shape_mismatch,
          "point array is not a positive multiple of the dimension");
  const std::size_t n = points.size() / dim;
  return DiscreteMeasure(dim, block, std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::dirac(std::vector<double> point, std::size_t block) {
  const std::size_t dim = point.size();
  return DiscreteMeasure(dim, block, std::move(point), {1.0});
}

DiscreteMeasure DiscreteMeasure::merged(double tol) const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = point(a), pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  auto close = [&](std::span<const double> a, std::span<const double> b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
  };
  std::vector<double> pts;
  std::vector<double> wts;
  for (std::size_t idx : order) {
    auto p = point(idx);
    if (!wts.empty() && close(std::span<const double>(pts).subspan(pts.size() - dim_, dim_), p)) {
      wts.back() += weights_[idx];
    } else {
      pts.insert(pts.end(), p.begin(), p.end());
      wts.push_back(weights_[idx]);
    }
  }
  const double total = std::accumulate(wts.begin(), wts.end(), 0.0);
  for (double& w : wts) w /= total;
  return DiscreteMeasure(dim_, block_, std::move(pts), std::move(wts));
}

DiscreteMeasure DiscreteMeasure::marginal(std::size_t j) const {
  require(j >= 1 && j <= n_blocks(), ErrorCode::invalid_argument, "marginal order out of range");
  const std::size_t mdim = j * block_;
  std::vector<double> pts;
  pts.reserve(size() * mdim);
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    pts.insert(pts.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(mdim));
  }
  return DiscreteMeasure(mdim, block_, std::move(pts), weights_).merged();
}

DiscreteMeasure tensor_product(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  require(a.block() == b.block(), ErrorCode::shape_mismatch, "tensor product needs equal block sizes");
  const std::size_t dim = a.dim() + b.dim();
  std::vector<double> pts;
  std::vector<double> wts;
  pts.reserve(a.size() * b.size() * dim);
  wts.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      auto pa = a.point(i);
      auto pb = b.point(k);
      pts.insert(pts.end(), pa.begin(), pa.end());
      pts.insert(pts.end(), pb.begin(), pb.end());
      wts.push_back(a.weight(i) * b.weight(k));
    }
  }
  const double total = std::accumulate(wts.begin(), wts.end(), 0.0);
  for (double& w : wts) w /= total;
  return DiscreteMeasure(dim, a.block(), std::move(pts), std::move(wts));
}

DiscreteMeasure tensor_power(const DiscreteMeasure& f, std::size_t n, std::size_t max_atoms) {
  require(n >= 1, ErrorCode::invalid_argument, "tensor power needs n >= 1");
  double atoms = std::pow(static_cast<double>(f.size()), static_cast<double>(n));
  require(atoms <= static_cast<double>(max_atoms), ErrorCode::size_limit,
          "f^(x)" + std::to_string(n) + " would have " + std::to_string(static_cast<long long>(atoms)) +
              " atoms (limit " + std::to_string(max_atoms) + ")");
  DiscreteMeasure out = f;
  for (std::size_t k = 1; k < n; ++k) out = tensor_product(out, f);
  return out;
}

DiscreteMeasure make_empirical(const Configuration& x, std::size_t group) {
  const std::size_t n = x.n_particles();
  const std::size_t d = x.dim();
  require(group >= 1 && group <= n, ErrorCode::shape_mismatch,
          "group size " + std::to_string(group) + " must lie in [1, N=" + std::to_string(n) + "]");
  if (group == 1) {
    std::vector<double> pts(x.coords().begin(), x.coords().end());
    std::vector<double> wts(n, 1.0 / static_cast<double>(n));
    return DiscreteMeasure(d, d, std::move(pts), std::move(wts)).merged();
  }
  double count = 1.0;
  for (std::size_t k = 0; k < group; ++k) count *= static_cast<double>(n - k);
  require(count <= 1e6, ErrorCode::size_limit, "too many ordered tuples for the grouped empirical measure");
  std::vector<double> pts;
  std::vector<std::size_t> idx(group, 0);
  std::vector<bool> used(n, false);
  // depth-first enumeration of injective maps {1..group} -> {1..N}
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == group) {
      for (std::size_t k = 0; k < group; ++k) {
        auto p = x.particle(idx[k]);
        pts.insert(pts.end(), p.begin(), p.end());
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      idx[depth] = i;
      self(self, depth + 1);
      used[i] = false;
    }
  };
  recurse(recurse, 0);
  return DiscreteMeasure::uniform(group * d, d, std::move(pts)).merged();
}

}  // namespace chaoslab

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "chaoslab/error.hpp"
#include "chaoslab/information.hpp"

namespace chaoslab::info {

namespace {

// Sum of log nearest-neighbour distances of the rows of `pts` (n x d, rows distinct),
// sorted by their first coordinate.
double sum_log_nn(const std::vector<double>& pts, std::size_t d) {
  const std::size_t n = pts.size() / d;
  double total = 0.0;
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      if (i > 0) best = pts[i] - pts[i - 1];
      if (i + 1 < n) best = std::min(best, pts[i + 1] - pts[i]);
      total += std::log(best);
    }
    return total;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = &pts[i * d];
    double best2 = std::numeric_limits<double>::infinity();
    const auto scan = [&](std::size_t k) {
      const double* q = &pts[k * d];
      const double dx = q[0] - p[0];
      if (dx * dx >= best2) return false;
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += (q[c] - p[c]) * (q[c] - p[c]);
      best2 = std::min(best2, s);
      return true;
    };
    for (std::size_t k = i + 1; k < n && scan(k); ++k) {
    }
    for (std::size_t k = i; k-- > 0 && scan(k);) {
    }
    total += 0.5 * std::log(best2);
  }
  return total;
}

double kl_estimate(const std::vector<double>& sorted_pts, std::size_t d) {
  const std::size_t n = sorted_pts.size() / d;
  const double dd = static_cast<double>(d);
  const double log_ball = 0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd + 1.0);
  const double physical = boost::math::digamma(static_cast<double>(n)) - boost::math::digamma(1.0) + log_ball +
                          dd / static_cast<double>(n) * sum_log_nn(sorted_pts, d);
  return -physical;
}

}  // namespace

InfoValue entropy_knn(std::span<const double> samples, std::size_t dim) {
  require(dim >= 1 && samples.size() % dim == 0, ErrorCode::shape_mismatch, "samples must be count x dim");
  const std::size_t count = samples.size() / dim;
  require(count >= 50, ErrorCode::invalid_argument, "the k-NN estimator needs at least 50 samples");
  for (double x : samples) require(std::isfinite(x), ErrorCode::invalid_argument, "non-finite sample");

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  const auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(samples.begin() + a * dim, samples.begin() + (a + 1) * dim,
                                        samples.begin() + b * dim, samples.begin() + (b + 1) * dim);
  };
  std::sort(order.begin(), order.end(), row_less);
  // drop exact repeats; keep each row's original index for the jackknife groups
  std::vector<double> pts;
  std::vector<std::size_t> origin;
  std::size_t duplicates = 0;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t a = order[r];
    if (r > 0 && std::equal(samples.begin() + a * dim, samples.begin() + (a + 1) * dim,
                            samples.begin() + order[r - 1] * dim)) {
      ++duplicates;
      continue;
    }
    pts.insert(pts.end(), samples.begin() + a * dim, samples.begin() + (a + 1) * dim);
    origin.push_back(a);
  }
  const std::size_t n = origin.size();
  require(n >= 20, ErrorCode::degenerate_input, "too few distinct samples for the k-NN estimator");

  InfoValue out;
  out.method = Method::knn_estimator;
  out.duplicates = duplicates;
  out.value = kl_estimate(pts, dim);

  constexpr std::size_t groups = 10;
  std::vector<double> partial(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<double> keep;
    keep.reserve(pts.size());
    for (std::size_t r = 0; r < n; ++r)
      if (origin[r] % groups != g) keep.insert(keep.end(), pts.begin() + r * dim, pts.begin() + (r + 1) * dim);
    partial[g] = kl_estimate(keep, dim);
  }
  const double mean = std::accumulate(partial.begin(), partial.end(), 0.0) / groups;
  double ss = 0.0;
  for (double p : partial) ss += (p - mean) * (p - mean);
  out.std_err = std::sqrt((groups - 1.0) / groups * ss);
  return out;
}

}  // namespace chaoslab::info

#include "chaoslab/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab::info {

namespace {

constexpr double kFloor = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

InfoValue infinite(Method m, std::size_t j = 1) {
  InfoValue v;
  v.value = kInf;
  v.method = m;
  v.j = j;
  v.infinite = true;
  return v;
}

bool single_gaussian(const Density& f) {
  return f.kind() == Density::Kind::gaussian_mixture && f.components().size() == 1;
}

// Derivative of a sampled function along a strided axis: 5-point stencil in the interior,
// 3-point next to the ends and one-sided at the ends.
double derivative(const double* v, std::size_t i, std::size_t n, std::size_t stride, double h) {
  const auto at = [&](std::size_t k) { return v[k * stride]; };
  if (i >= 2 && i + 2 < n) return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  if (i >= 1 && i + 1 < n) return (at(i + 1) - at(i - 1)) / (2.0 * h);
  if (i == 0) return (at(1) - at(0)) / h;
  return (at(i) - at(i - 1)) / h;
}

double grid_fisher_raw(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  double mass = 0.0, top = 0.0;
  for (double v : values) {
    mass += v * h;
    top = std::max(top, v);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = values[i] / mass;
    if (g < kFloor) continue;
    const double d = derivative(values.data(), i, n, 1, h) / mass;
    total += d * d / g * h;
  }
  return total;
}

std::vector<double> subsample(std::span<const double> values, std::size_t step) {
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); i += step) out.push_back(values[i]);
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::quadrature: return "quadrature";
    case Method::knn_estimator: return "knn_estimator";
    case Method::score_plugin: return "score_plugin";
  }
  return "?";
}

InfoValue entropy(const Density& f) {
  InfoValue out;
  if (single_gaussian(f)) {
    const double sd = f.components()[0].sd;
    out.value = -0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * sd * sd);
    out.method = Method::analytic;
  } else if (f.kind() == Density::Kind::uniform) {
    out.value = -std::log(f.support().width());
    out.method = Method::analytic;
  } else {
    out.value = expect(f, [&](double v) { return f.log_pdf(v); });
  }
  return out;
}

InfoValue entropy(const GridDensity& g) {
  const double h = g.spacing(), mass = g.mass();
  double total = 0.0;
  for (double v : g.values()) {
    const double p = v / mass;
    if (p > 0.0) total += p * std::log(p) * h;
  }
  return {total, Method::quadrature, 1, false, 0.0, 0};
}

InfoValue entropy(const TensorGrid& g) {
  const double dv = g.cell_volume(), mass = g.mass();
  double total = 0.0;
  for (double v : g.values()) {
    const double p = v / mass;
    if (p > 0.0) total += p * std::log(p) * dv;
  }
  return {total / static_cast<double>(g.rank()), Method::quadrature, g.rank(), false, 0.0, 0};
}

InfoValue entropy(const DiscreteMeasure& f) {
  const auto m = f.merged();
  double total = 0.0;
  for (double w : m.weights())
    if (w > 0.0) total += w * std::log(w);
  return {total / static_cast<double>(m.n_blocks()), Method::analytic, m.n_blocks(), false, 0.0, 0};
}

InfoValue relative_entropy(const Density& f, const Density& g) {
  const Interval sf = f.support(), sg = g.support();
  if (sf.lo < sg.lo || sf.hi > sg.hi) return infinite(Method::quadrature);
  InfoValue out;
  bool escaped = false;
  out.value = expect(f, [&](double v) {
    const double lf = f.log_pdf(v), lg = g.log_pdf(v);
    if (!std::isfinite(lf)) return 0.0;
    if (!std::isfinite(lg)) {
      escaped = true;
      return 0.0;
    }
    return lf - lg;
  });
  if (escaped) return infinite(Method::quadrature);
  out.value = std::max(out.value, 0.0);
  return out;
}

InfoValue relative_entropy(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  require(f.dim() == g.dim() && f.block() == g.block(), ErrorCode::shape_mismatch, "measures on different spaces");
  const auto a = f.merged(), b = g.merged();
  const std::size_t d = a.dim();
  const auto less = [d](std::span<const double> x, std::span<const double> y) {
    for (std::size_t c = 0; c < d; ++c) {
      if (x[c] < y[c] - DiscreteMeasure::kMergeTolerance) return true;
      if (x[c] > y[c] + DiscreteMeasure::kMergeTolerance) return false;
    }
    return false;
  };
  double total = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (k < b.size() && less(b.point(k), a.point(i))) ++k;
    if (k == b.size() || less(a.point(i), b.point(k)))
      return infinite(Method::analytic, a.n_blocks());
    total += a.weight(i) * std::log(a.weight(i) / b.weight(k));
  }
  return {std::max(total, 0.0) / static_cast<double>(a.n_blocks()), Method::analytic, a.n_blocks(), false, 0.0, 0};
}

InfoValue fisher(const Density& f) {
  if (f.kind() == Density::Kind::uniform || f.kind() == Density::Kind::tabulated)
    return infinite(Method::analytic);  // jumps: not in W^{1,1}(R)
  InfoValue out;
  if (single_gaussian(f)) {
    const double sd = f.components()[0].sd;
    out.value = 1.0 / (sd * sd);
    out.method = Method::analytic;
  } else {
    out.value = expect(f, [&](double v) {
      const double s = f.score(v);
      return s * s;
    });
  }
  return out;
}

InfoValue fisher(const GridDensity& g) {
  const auto values = g.values();
  require(values.size() >= 32, ErrorCode::invalid_argument, "grid too small for the refinement test");
  const double h = g.spacing();
  const double fine = grid_fisher_raw(values, h);
  const double coarse = grid_fisher_raw(subsample(values, 4), 4.0 * h);
  if (!std::isfinite(fine) || (coarse > 0.0 && fine / coarse >= 3.0)) return infinite(Method::quadrature);
  return {fine, Method::quadrature, 1, false, 0.0, 0};
}

InfoValue fisher(const TensorGrid& g) {
  const std::size_t rank = g.rank(), n = g.n_axis();
  const auto values = g.values();
  const double h = g.spacing(), dv = g.cell_volume(), mass = g.mass();
  std::vector<std::size_t> stride(rank);
  std::size_t s = 1;
  for (std::size_t r = rank; r-- > 0;) {
    stride[r] = s;
    s *= n;
  }
  double total = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const double p = values[flat] / mass;
    if (p < kFloor) continue;
    double grad2 = 0.0;
    for (std::size_t r = 0; r < rank; ++r) {
      const std::size_t i = (flat / stride[r]) % n;
      const double* line = values.data() + (flat - i * stride[r]);
      const double d = derivative(line, i, n, stride[r], h) / mass;
      grad2 += d * d;
    }
    total += grad2 / p * dv;
  }
  return {total / static_cast<double>(rank), Method::quadrature, rank, false, 0.0, 0};
}

InfoValue entropy_quadrature(const Density& f) {
  require(f.smooth(), ErrorCode::invalid_argument, "quadrature entropy needs a smooth density");
  InfoValue out;
  out.value = expect(f, [&](double v) { return f.log_pdf(v); });
  return out;
}

InfoValue fisher_quadrature(const Density& f) {
  require(f.smooth(), ErrorCode::invalid_argument, "quadrature Fisher information needs a smooth density");
  InfoValue out;
  out.value = expect(f, [&](double v) {
    const double s = f.score(v);
    return s * s;
  });
  return out;
}

InfoValue relative_fisher(const Density& f, const Density& g) {
  if (!f.smooth() || !g.smooth()) return infinite(Method::quadrature);
  InfoValue out;
  out.value = expect(f, [&](double v) {
    const double d = f.score(v) - g.score(v);
    return d * d;
  });
  return out;
}

double fisher_dual_lower_bound(const Density& f, const std::function<double(double)>& psi,
                               const std::function<double(double)>& dpsi) {
  return expect(f, [&](double v) {
    const double p = psi(v);
    return -0.25 * p * p - dpsi(v);
  });
}

double entropy_moment_lower_bound(const Density& f, double k) {
  require(k > 0.0, ErrorCode::invalid_argument, "moment order must be positive");
  const double log_ck = std::log(k) - std::log(2.0) - std::lgamma(1.0 / k);
  return log_ck - f.abs_moment(k);
}

double w2(const Density& f, const Density& g) {
  if (single_gaussian(f) && single_gaussian(g)) {
    const auto a = f.components()[0], b = g.components()[0];
    return std::hypot(a.mean - b.mean, a.sd - b.sd);
  }
  // int (x - G^{-1}(F(x)))^2 f(x) dx. The far tails carry cdf roundoff, which sends adaptive
  // refinement chasing noise, so a fixed composite rule is used.
  const Interval range = f.integration_range();
  const double value = fixed_gauss(
      [&](double x) {
        const double p = f.cdf(x);
        if (!(p > 0.0 && p < 1.0)) return 0.0;
        const double d = x - g.quantile(p);
        return d * d * f.pdf(x);
      },
      range.lo, range.hi, 256);
  return std::sqrt(std::max(0.0, value));
}

HwiCheck hwi_check(const Density& f, const Density& g, double c_e) {
  require(!f.support().bounded() && !g.support().bounded(), ErrorCode::hypothesis_failed,
          "the HWI check covers densities on the whole line only");
  require(c_e > 0.0, ErrorCode::invalid_argument, "C_E must be positive");
  HwiCheck out;
  out.c_e = c_e;
  const auto fi = fisher(f);
  if (fi.infinite) {
    out.vacuous = true;
    out.rhs = kInf;
  }
  out.lhs = entropy(f).value - entropy(g).value;
  if (!out.vacuous) out.rhs = c_e * w2(f, g) * std::sqrt(fi.value);
  return out;
}

void require_symmetric(const DiscreteMeasure& f, double tol) {
  const auto m = f.merged();
  const std::size_t blocks = m.n_blocks(), d = m.block();
  if (blocks < 2) return;
  // adjacent transpositions generate the symmetric group
  std::vector<double> swapped(m.points().begin(), m.points().end());
  for (std::size_t t = 0; t + 1 < blocks; ++t) {
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t c = 0; c < d; ++c) {
        swapped[a * m.dim() + t * d + c] = m.point(a)[(t + 1) * d + c];
        swapped[a * m.dim() + (t + 1) * d + c] = m.point(a)[t * d + c];
      }
    const DiscreteMeasure perm(m.dim(), d, swapped, {m.weights().begin(), m.weights().end()});
    const auto pm = perm.merged();
    bool same = pm.size() == m.size();
    for (std::size_t a = 0; same && a < m.size(); ++a) {
      same = std::abs(pm.weight(a) - m.weight(a)) <= tol;
      for (std::size_t c = 0; same && c < m.dim(); ++c)
        same = std::abs(pm.point(a)[c] - m.point(a)[c]) <= DiscreteMeasure::kMergeTolerance;
    }
    if (!same) fail(ErrorCode::asymmetric_input, "measure is not symmetric under exchange of its variables");
    std::copy(m.points().begin(), m.points().end(), swapped.begin());
  }
}

SuperadditivityCheck superadditivity_check(const DiscreteMeasure& f, std::size_t i, std::size_t j) {
  require(i >= 1 && j >= 1 && f.n_blocks() == i + j, ErrorCode::shape_mismatch, "F must live on E^{i+j}");
  require_symmetric(f);
  const auto nonnormalized = [](const DiscreteMeasure& m) { return entropy(m).value * static_cast<double>(m.n_blocks()); };
  return {nonnormalized(f), nonnormalized(f.marginal(i)) + nonnormalized(f.marginal(j))};
}

SuperadditivityCheck fisher_superadditivity_check(const TensorGrid& f) {
  require(f.rank() == 2, ErrorCode::shape_mismatch, "the Fisher check takes a two-variable grid");
  const std::size_t n = f.n_axis();
  const auto v = f.values();
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(v[a * n + b] - v[b * n + a]) > 1e-12 * top)
        fail(ErrorCode::asymmetric_input, "grid density is not symmetric");
  const double i2 = 2.0 * fisher(f).value;
  const double i1 = fisher(f.marginal(1)).value;
  return {i2, 2.0 * i1};
}

}  // namespace chaoslab::info

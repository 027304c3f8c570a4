#include "chaoslab/oracles.hpp"

#include <algorithm>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "chaoslab/error.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab::oracle {

double w1_config_bruteforce(const Configuration& x, const Configuration& y) {
  require(x.n_particles() == y.n_particles() && x.dim() == y.dim(), ErrorCode::shape_mismatch, "size mismatch");
  const std::size_t n = x.n_particles(), d = x.dim();
  require(n <= 9, ErrorCode::size_limit, "brute force is limited to N <= 9");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = x.particle(i)[k] - y.particle(perm[i])[k];
        sq += diff * diff;
      }
      total += std::min(std::sqrt(sq), 1.0);
    }
    best = std::min(best, total / static_cast<double>(n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double phi_fourier(double s, std::size_t dim, double r) {
  require(dim == 1 || dim == 3, ErrorCode::invalid_argument, "the Fourier oracle covers d = 1 and d = 3");
  require(s > 0.5 * static_cast<double>(dim), ErrorCode::invalid_argument, "need s > d/2");
  r = std::abs(r);
  const auto weight = [s](double xi) { return std::pow(1.0 + xi * xi, -s); };
  if (dim == 1) {
    if (r == 0.0) return 2.0 * integrate(weight, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-13);
    return 2.0 * cos_rule.integrate(weight, r).first;
  }
  // radial form in R^3: (4 pi / r) int_0^inf xi sin(xi r) <xi>^{-2s} d xi
  if (r == 0.0)
    return 4.0 * std::numbers::pi *
           integrate([&](double xi) { return xi * xi * weight(xi); }, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
  boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-13);
  return 4.0 * std::numbers::pi / r * sin_rule.integrate([&](double xi) { return xi * weight(xi); }, r).first;
}

FourierHs hs_dist_sq_fourier(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double s, double xi_max) {
  require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::shape_mismatch, "the Fourier oracle works on the line");
  require(s > 0.5, ErrorCode::invalid_argument, "need s > 1/2");
  std::vector<double> z, w;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    z.push_back(mu.point(a)[0]);
    w.push_back(mu.weight(a));
  }
  for (std::size_t a = 0; a < nu.size(); ++a) {
    z.push_back(nu.point(a)[0]);
    w.push_back(-nu.weight(a));
  }
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  const double spread = std::max(*hi - *lo, 1e-3);
  const auto integrand = [&](double xi) {
    double re = 0.0, im = 0.0;
    for (std::size_t a = 0; a < z.size(); ++a) {
      re += w[a] * std::cos(xi * z[a]);
      im -= w[a] * std::sin(xi * z[a]);
    }
    return (re * re + im * im) * std::pow(1.0 + xi * xi, -s);
  };
  // panels narrower than a tenth of the fastest period
  const auto panels = static_cast<std::size_t>(std::ceil(xi_max * spread * 10.0 / (2.0 * std::numbers::pi))) + 16;
  FourierHs out{};
  out.value = 2.0 * fixed_gauss(integrand, 0.0, xi_max, panels);

  // tail: |mu^ - nu^|^2 = sum_{a,b} w_a w_b cos(xi (z_a - z_b)); pairs at equal position do not oscillate
  double diagonal = 0.0, oscillating = 0.0;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = 0; b < z.size(); ++b) {
      if (z[a] == z[b])
        diagonal += w[a] * w[b];
      else
        oscillating += std::abs(w[a] * w[b]);
    }
  const double tail = integrate([&](double xi) { return std::pow(1.0 + xi * xi, -s); }, xi_max,
                                std::numeric_limits<double>::infinity(), 1e-14);
  out.value += 2.0 * diagonal * tail;
  out.tail_bound = 2.0 * oscillating * tail;
  return out;
}

GridDensity clt_real_space(const GridDensity& g, std::size_t n) {
  require(n == 2 || n == 3, ErrorCode::invalid_argument, "the real-space oracle covers N in {2, 3}");
  const std::size_t m = g.n_points();
  const double h = g.spacing();
  // lattice masses; index i sits at (i - M/2) h
  std::vector<double> mass(m);
  for (std::size_t i = 0; i < m; ++i) mass[i] = h * g.value(i);
  std::vector<double> conv = mass;
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<double> next(conv.size() + m - 1, 0.0);
    for (std::size_t a = 0; a < conv.size(); ++a) {
      if (conv[a] == 0.0) continue;
      for (std::size_t b = 0; b < m; ++b) next[a + b] += conv[a] * mass[b];
    }
    conv = std::move(next);
  }
  // conv[k] sits at (k - n M/2) h; after division by sqrt(N) it is at (k - n M/2) h / sqrt(N)
  const double root = std::sqrt(static_cast<double>(n));
  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(m) * h);
  const double half = 0.5 * static_cast<double>(m);
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t k = 0; k < conv.size(); ++k)
    if (conv[k] != 0.0) atoms.emplace_back((static_cast<double>(k) - half * static_cast<double>(n)) * h / root, conv[k]);
  // (1/(M h)) sum_{k=0}^{M-1} e^{i (k - M/2) dxi z}, real part
  const auto dirichlet = [&](double z) {
    const double t = 0.5 * dxi * z;
    const double sn = std::sin(t);
    if (std::abs(sn) < 1e-12) {
      // z on the dual period: every term equals e^{-i M t} up to the removable limit
      return std::cos(static_cast<double>(m) * t) * static_cast<double>(m) / (static_cast<double>(m) * h);
    }
    return std::cos(t) * std::sin(static_cast<double>(m) * t) / sn / (static_cast<double>(m) * h);
  };
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = g.x(j);
    double acc = 0.0;
    for (const auto& [y, c] : atoms) acc += c * dirichlet(x - y);
    values[j] = acc;
  }
  return GridDensity(g.half_width(), std::move(values)).normalized();
}

}  // namespace chaoslab::oracle

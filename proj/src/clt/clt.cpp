#include "chaoslab/clt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chaoslab/error.hpp"
#include "chaoslab/fourier.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab::clt {

using fourier::cplx;

namespace {

void require_standardized(const GridDensity& g) {
  require(std::abs(g.mass() - 1.0) < 1e-9, ErrorCode::hypothesis_failed, "base density must have mass 1");
  require(std::abs(g.mean()) <= kMeanTolerance, ErrorCode::hypothesis_failed, "base density must have mean 0");
  require(std::abs(g.variance() - 1.0) <= kVarianceTolerance, ErrorCode::hypothesis_failed,
          "base density must have variance 1");
}

cplx ipow(cplx z, std::size_t n) {
  cplx acc(1.0, 0.0);
  while (n > 0) {
    if (n & 1u) acc *= z;
    z *= z;
    n >>= 1u;
  }
  return acc;
}

}  // namespace

GridDensity iterate_clt(const GridDensity& g, std::size_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "N must be positive");
  require_standardized(g);
  const std::size_t m = g.n_points();
  require(m >= 4, ErrorCode::invalid_argument, "grid too small");
  const double h = g.spacing();
  std::vector<cplx> mass(m);
  for (std::size_t i = 0; i < m; ++i) mass[i] = h * g.value(i);
  // x_i = (i - M/2) h and xi_k = (k - M/2) 2 pi / (M h), so xi_k x_i / sqrt(N) = 2 pi (k-c)(i-c) / (M sqrt N).
  const double beta = 2.0 * std::numbers::pi / (static_cast<double>(m) * std::sqrt(static_cast<double>(n)));
  auto spectrum = fourier::centered_chirp(mass, beta);
  double edge = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    spectrum[k] = ipow(spectrum[k], n);
    const double dist = std::abs(static_cast<double>(k) - 0.5 * static_cast<double>(m));
    if (dist >= 0.375 * static_cast<double>(m)) edge = std::max(edge, std::abs(spectrum[k]));
  }
  if (edge > 1e-6)
    fail(ErrorCode::aliasing, "characteristic function of g_N is not negligible near Nyquist; use a finer grid");
  // e^{2 pi i (k-c)(j-c)/M} = (-1)^{k+j} e^{2 pi i k j / M} when 4 divides M.
  for (std::size_t k = 0; k < m; ++k)
    if (k & 1u) spectrum[k] = -spectrum[k];
  const auto back = fourier::dft(spectrum, true);
  std::vector<double> values(m);
  const double scale = 1.0 / (static_cast<double>(m) * h);
  for (std::size_t j = 0; j < m; ++j) values[j] = ((j & 1u) ? -1.0 : 1.0) * back[j].real() * scale;
  return GridDensity(g.half_width(), std::move(values)).normalized();
}

double sup_error(const GridDensity& gn) {
  double worst = 0.0;
  for (std::size_t i = 0; i < gn.n_points(); ++i)
    worst = std::max(worst, std::abs(gn.value(i) - gaussian_pdf(gn.x(i))));
  return worst;
}

CharFnBounds char_fn_bounds_check(const GridDensity& g) {
  require_standardized(g);
  const std::size_t m = g.n_points();
  const std::size_t p = 8 * m;
  const double h = g.spacing();
  std::vector<cplx> padded(p);
  for (std::size_t i = 0; i < m; ++i) padded[i] = h * g.value(i);
  const auto spec = fourier::dft(padded);
  // |hat g(xi_j)| for xi_j = 2 pi j / (p h), j = 0..p/2 (the shift of the origin only changes the phase)
  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(p) * h);
  const std::size_t half = p / 2;
  std::size_t good = half;
  for (std::size_t j = 0; j <= half; ++j) {
    const double xi = dxi * static_cast<double>(j);
    if (std::abs(spec[j]) > std::exp(-0.25 * xi * xi) + 1e-12) {
      good = j == 0 ? 0 : j - 1;
      break;
    }
  }
  CharFnBounds out{dxi * static_cast<double>(good), 0.0};
  for (std::size_t j = std::max<std::size_t>(good, 1); j <= half; ++j) out.kappa = std::max(out.kappa, std::abs(spec[j]));
  if (out.kappa >= 1.0 - 1e-9)
    fail(ErrorCode::degenerate_input, "sup of |hat g| away from 0 is 1: the base behaves like a lattice law");
  return out;
}

CltRun run_clt(const GridDensity& base, const std::vector<int>& ns) {
  require(!ns.empty(), ErrorCode::invalid_argument, "no N values");
  CltRun run;
  run.ns = ns;
  run.sup_errors = parallel_map(ns.size(), [&](std::size_t i) {
    return sup_error(iterate_clt(base, static_cast<std::size_t>(ns[i])));
  });
  if (ns.size() >= 4) run.report = loglog_fit(ns, run.sup_errors);
  return run;
}

}  // namespace chaoslab::clt

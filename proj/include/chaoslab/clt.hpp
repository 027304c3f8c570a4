#pragma once

#include <cstddef>
#include <vector>

#include "chaoslab/fit.hpp"
#include "chaoslab/grid.hpp"

namespace chaoslab::clt {

/// g_N(x) = sqrt(N) g^{*N}(sqrt(N) x), computed on the grid of g from
/// hat g_N(xi) = hat g(xi / sqrt(N))^N and an inverse transform. g must be standardized.
/// Throws aliasing when hat g_N is not negligible near the Nyquist frequency.
GridDensity iterate_clt(const GridDensity& g, std::size_t n);

/// max_i |g_N(x_i) - gamma(x_i)|.
double sup_error(const GridDensity& gn);

struct CharFnBounds {
  double delta;  // largest frequency up to which |hat g(xi)| <= exp(-xi^2/4) holds on the grid
  double kappa;  // sup of |hat g| beyond delta, up to the Nyquist frequency
};

/// Throws degenerate_input when kappa >= 1 - 1e-9 (lattice-like base).
CharFnBounds char_fn_bounds_check(const GridDensity& g);

struct CltRun {
  std::vector<int> ns;
  std::vector<double> sup_errors;
  RateReport report;
};

/// sup_error(iterate_clt(base, N)) over ns (processed in parallel) and the log-log fit.
CltRun run_clt(const GridDensity& base, const std::vector<int>& ns);

/// Mean and variance tolerances required of a base density.
constexpr double kMeanTolerance = 1e-8;
constexpr double kVarianceTolerance = 1e-6;

}  // namespace chaoslab::clt

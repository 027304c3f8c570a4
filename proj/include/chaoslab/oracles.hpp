#pragma once

#include <cstddef>

#include "chaoslab/grid.hpp"
#include "chaoslab/measure.hpp"

/// Slow reference implementations, independent of the production code paths.
namespace chaoslab::oracle {

/// min over all N! permutations of (1/N) sum_i min(|x_i - y_s(i)|, 1), N <= 9, Euclidean |.|.
double w1_config_bruteforce(const Configuration& x, const Configuration& y);

/// Phi_s(r) = int_{R^d} e^{-i xi.z} <xi>^{-2s} d xi by oscillatory quadrature, d in {1, 3}.
double phi_fourier(double s, std::size_t dim, double r);

struct FourierHs {
  double value;
  double tail_bound;  // bound on the neglected part beyond the cutoff
};

/// int |mu^(xi) - nu^(xi)|^2 <xi>^{-2s} d xi on the line, integrated up to |xi| <= xi_max.
/// The diagonal part of the tail is integrated exactly; the oscillating part is bounded.
FourierHs hs_dist_sq_fourier(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double s, double xi_max = 200.0);

/// sqrt(N) g^{*N}(sqrt(N) x) at the grid points, N in {2, 3}: the lattice convolution done
/// directly, then resampled with the band-limited (Dirichlet) interpolant of the grid, and renormalized.
GridDensity clt_real_space(const GridDensity& g, std::size_t n);

}  // namespace chaoslab::oracle

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoslab/measure.hpp"

namespace chaoslab::sobolev {

/// Radial table of Phi_s(z) = int e^{-i z.xi} <xi>^{-2s} d xi on R^d, s > d/2.
/// In closed form Phi_s(r) = (2 pi)^{d/2} 2^{1-s} / Gamma(s) r^nu K_nu(r), nu = s - d/2;
/// the table holds values and slopes on [0, 64] and is read by cubic Hermite interpolation.
class HsKernel {
 public:
  HsKernel(double s, std::size_t dim = 1, std::size_t points = 4096, double r_max = 64.0);

  double s() const noexcept { return s_; }
  std::size_t dim() const noexcept { return dim_; }
  double r_max() const noexcept { return r_max_; }
  double at_zero() const noexcept { return phi0_; }
  /// sup |grad Phi_s|; infinite when s <= (d+1)/2.
  double lipschitz_bound() const noexcept { return lip_; }

  /// Phi_s at radius r >= 0.
  double radial(double r) const;
  double operator()(std::span<const double> z) const;

  std::span<const double> nodes() const noexcept { return r_; }
  std::span<const double> values() const noexcept { return v_; }

 private:
  double s_;
  std::size_t dim_;
  double r_max_;
  double phi0_;
  double lip_;
  double tail_power_;
  std::vector<double> r_, v_, dv_;
};

/// Closed form of Phi_s(r) (Bessel function route), used to build the table.
double phi_closed_form(double s, std::size_t dim, double r);

double phi_s(std::span<const double> z, const HsKernel& kernel);

/// ||mu - nu||^2_{H^{-s}} = sum_{a,b} w_a w_b Phi_s(z_a - z_b) over the signed measure mu - nu.
double hs_dist_sq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const HsKernel& kernel);

struct BridgeCheck {
  double w1;           // W1 for the bounded cost min(|x - y|, 1)
  double bound;        // explicit upper bound on w1 from the H^{-s} distance and k-th moments
  double hs_norm;      // ||mu - nu||_{H^{-s}}
  double hs_bound;     // upper bound on hs_norm from w1: sqrt(2 max(Lip, Phi(0)) w1)
  double best_radius;  // minimizers of the explicit bound
  double best_eps;
  bool holds() const noexcept { return w1 <= bound + 1e-12 && hs_norm <= hs_bound + 1e-9; }
};

/// Both comparisons between W1 and ||.||_{H^{-s}} on the line, with explicit constants:
///   W1 <= 3 sqrt(2/pi) eps + (M_k(mu) + M_k(nu)) / (2 R^k)
///         + A_s(eps) sqrt((2.5 R + 5) / (2 pi)) ||mu - nu||_{H^{-s}},
///   A_s(eps)^2 = sup_t (1 + t)^{s-1} e^{-eps^2 t},
/// minimized over a grid of (R, eps).
BridgeCheck hs_w1_bridge_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double k, double s);

}  // namespace chaoslab::sobolev

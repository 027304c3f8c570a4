#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "chaoslab/density.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/measure.hpp"

namespace chaoslab::info {

enum class Method { analytic, quadrature, knn_estimator, score_plugin };
std::string to_string(Method m);

/// Entropy H = int F log F (the negative of the physical entropy) and Fisher information,
/// normalized by the number of variables j.
struct InfoValue {
  double value = 0.0;
  Method method = Method::quadrature;
  std::size_t j = 1;
  bool infinite = false;   // +infinity
  double std_err = 0.0;    // estimators only
  std::size_t duplicates = 0;  // knn: repeated points removed before estimation
};

InfoValue entropy(const Density& f);
InfoValue entropy(const GridDensity& g);
InfoValue entropy(const TensorGrid& g);
/// Shannon form sum_a p_a log p_a over the atoms, divided by the number of blocks.
InfoValue entropy(const DiscreteMeasure& f);

InfoValue relative_entropy(const Density& f, const Density& g);
InfoValue relative_entropy(const DiscreteMeasure& f, const DiscreteMeasure& g);

InfoValue fisher(const Density& f);
/// The quadrature values even where a closed form is known (cross-checks).
InfoValue entropy_quadrature(const Density& f);
InfoValue fisher_quadrature(const Density& f);
/// Fourth-order central differences; +infinity when the estimate keeps growing under refinement
/// (ratio I_h / I_{4h} >= 3, with 4 the value for a jump).
InfoValue fisher(const GridDensity& g);
InfoValue fisher(const TensorGrid& g);
/// int |f'/f - g'/g|^2 f.
InfoValue relative_fisher(const Density& f, const Density& g);

/// int (-psi^2/4 - psi') f, a lower bound on I(f) for every bounded C^1 field psi.
double fisher_dual_lower_bound(const Density& f, const std::function<double(double)>& psi,
                               const std::function<double(double)>& dpsi);

/// Kozachenko-Leonenko estimate (k = 1) of int f log f from `samples` (count x dim, row-major),
/// with a 10-group jackknife standard error. Exact repeats are removed and counted.
InfoValue entropy_knn(std::span<const double> samples, std::size_t dim = 1);

/// log c_k - M_k(f) with c_k = k / (2 Gamma(1/k)); a lower bound on H(f).
double entropy_moment_lower_bound(const Density& f, double k);

/// W2 between densities on R through the quantile coupling.
double w2(const Density& f, const Density& g);

struct HwiCheck {
  double lhs = 0.0;  // H(f) - H(g)
  double rhs = 0.0;  // C_E W2(f, g) sqrt(I(f))
  double c_e = 1.0;
  bool vacuous = false;  // I(f) = +infinity
  bool holds() const noexcept { return vacuous || lhs <= rhs + 1e-6; }
};
HwiCheck hwi_check(const Density& f, const Density& g, double c_e = 1.0);

struct SuperadditivityCheck {
  double lhs;  // H_{i+j}(F) (non-normalized)
  double rhs;  // H_i(F_i) + H_j(F_j)
  bool holds(double tol = 1e-10) const noexcept { return lhs >= rhs - tol; }
};
/// Discrete entropy superadditivity for a symmetric F on S^{i+j} (throws asymmetric_input).
SuperadditivityCheck superadditivity_check(const DiscreteMeasure& f, std::size_t i, std::size_t j);
/// Fisher superadditivity I_2(F) >= 2 I_1(F_1) for a symmetric two-variable grid density.
SuperadditivityCheck fisher_superadditivity_check(const TensorGrid& f);

/// Throws asymmetric_input unless F is invariant under permutations of its blocks.
void require_symmetric(const DiscreteMeasure& f, double tol = 1e-12);

}  // namespace chaoslab::info

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chaoslab/measure.hpp"

namespace chaoslab::transport {

enum class CostKind { bounded_l1, normalized_l2_sq };

/// Ground cost on E^j, averaged over the j blocks of size d:
///   bounded_l1:       (1/j) sum_k min(|x_k - y_k|, truncation)
///   normalized_l2_sq: (1/j) sum_k |x_k - y_k|^2
struct CostSpec {
  CostKind kind = CostKind::bounded_l1;
  double truncation = 1.0;

  static CostSpec bounded(double truncation = 1.0) { return {CostKind::bounded_l1, truncation}; }
  static CostSpec quadratic() { return {CostKind::normalized_l2_sq, 1.0}; }
};

double point_cost(std::span<const double> x, std::span<const double> y, std::size_t block, const CostSpec& spec);

struct Flow {
  std::size_t source;
  std::size_t target;
  double mass;
};

struct TransportPlan {
  std::size_t n_source = 0;
  std::size_t n_target = 0;
  std::vector<Flow> flows;
  double cost = 0.0;
};

/// Normalized configuration cost with the identity pairing x_i <-> y_i.
double cost_config(const Configuration& x, const Configuration& y, const CostSpec& spec = {});

struct ConfigMatch {
  double value;
  std::vector<std::size_t> permutation;  // x_i is matched with y_{permutation[i]}
};

/// w1(X, Y) = min over permutations of (1/N) sum_i d_E(x_i, y_sigma(i)), by exact assignment.
ConfigMatch w1_config(const Configuration& x, const Configuration& y);

/// Exact optimal transport between discrete measures (transportation simplex).
TransportPlan w1_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec = {});

/// Exact W1 on the real line for the cost min(|x - y|, truncation), in O(n log n).
/// Both measures must be one-dimensional.
double w1_line(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double truncation = 1.0);

/// Same for two uniformly weighted samples (sizes may differ); equals w1_config for equal sizes.
double w1_line_samples(std::span<const double> x, std::span<const double> y, double truncation = 1.0);

/// W1 for the unbounded cost |x - y| on the line: integral of |F - G|.
double w1_line_unbounded(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// W2 on the line for the cost |x - y|^2 via the monotone (quantile) coupling.
double w2_line(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

using Witness = std::function<double(std::span<const double>)>;

/// integral of phi d(mu - nu) for a witness that is 1-Lipschitz for the ground cost.
/// The Lipschitz bound is validated on all pairs of atoms (throws lipschitz_violation).
double w1_dual_lower_bound(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Witness& phi,
                           const CostSpec& spec = {});

struct CheckPair {
  double lhs;
  double rhs;
};

/// (W1(f^{(x)N}, g^{(x)N}), W1(f, g)) with the normalized cost on E^N, both by the simplex.
CheckPair tensorization_check(const DiscreteMeasure& f, const DiscreteMeasure& g, std::size_t n);

/// (2 W1(f (x) h, g (x) h), W1(f, g)).
CheckPair tensorization_pad_check(const DiscreteMeasure& f, const DiscreteMeasure& g, const DiscreteMeasure& h);

}  // namespace chaoslab::transport

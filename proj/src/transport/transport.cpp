#include <algorithm>
#include <cmath>

#include "chaoslab/assignment.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::transport {

double point_cost(std::span<const double> x, std::span<const double> y, std::size_t block, const CostSpec& spec) {
  require(x.size() == y.size() && block > 0 && x.size() % block == 0, ErrorCode::shape_mismatch,
          "points must have the same number of blocks");
  require(spec.truncation > 0.0, ErrorCode::invalid_argument, "truncation must be positive");
  const std::size_t j = x.size() / block;
  double total = 0.0;
  for (std::size_t b = 0; b < j; ++b) {
    double sq = 0.0;
    for (std::size_t c = 0; c < block; ++c) {
      const double d = x[b * block + c] - y[b * block + c];
      sq += d * d;
    }
    total += spec.kind == CostKind::bounded_l1 ? std::min(std::sqrt(sq), spec.truncation) : sq;
  }
  return total / static_cast<double>(j);
}

double cost_config(const Configuration& x, const Configuration& y, const CostSpec& spec) {
  require(x.dim() == y.dim() && x.n_particles() == y.n_particles(), ErrorCode::shape_mismatch,
          "configurations differ in size or dimension");
  return point_cost(x.coords(), y.coords(), x.dim(), spec);
}

ConfigMatch w1_config(const Configuration& x, const Configuration& y) {
  require(x.dim() == y.dim() && x.n_particles() == y.n_particles(), ErrorCode::shape_mismatch,
          "configurations differ in size or dimension");
  const std::size_t n = x.n_particles();
  std::vector<double> cost(n * n);
  const CostSpec spec{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cost[i * n + k] = point_cost(x.particle(i), y.particle(k), x.dim(), spec);
  auto a = solve_assignment(cost, n);
  return {a.cost / static_cast<double>(n), std::move(a.row_to_col)};
}

TransportPlan w1_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec) {
  require(mu.dim() == nu.dim() && mu.block() == nu.block(), ErrorCode::shape_mismatch,
          "measures live on different spaces");
  const std::size_t n = mu.size(), m = nu.size();
  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) cost[i * m + k] = point_cost(mu.point(i), nu.point(k), mu.block(), spec);
  const auto res = solve_transport(mu.weights(), nu.weights(), cost);
  TransportPlan plan;
  plan.n_source = n;
  plan.n_target = m;
  plan.cost = res.cost;
  plan.flows.reserve(res.flows.size());
  for (std::size_t k = 0; k < res.flows.size(); ++k) plan.flows.push_back({res.rows[k], res.cols[k], res.flows[k]});
  return plan;
}

double w1_dual_lower_bound(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Witness& phi,
                           const CostSpec& spec) {
  require(mu.dim() == nu.dim() && mu.block() == nu.block(), ErrorCode::shape_mismatch,
          "measures live on different spaces");
  std::vector<std::span<const double>> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < mu.size(); ++i) pts.push_back(mu.point(i));
  for (std::size_t i = 0; i < nu.size(); ++i) pts.push_back(nu.point(i));
  for (const auto& p : pts) vals.push_back(phi(p));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double d = point_cost(pts[a], pts[b], mu.block(), spec);
      if (std::abs(vals[a] - vals[b]) > d + 1e-12)
        fail(ErrorCode::lipschitz_violation, "witness is not 1-Lipschitz on the atom set");
    }
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += mu.weight(i) * vals[i];
  for (std::size_t i = 0; i < nu.size(); ++i) total -= nu.weight(i) * vals[mu.size() + i];
  return total;
}

CheckPair tensorization_check(const DiscreteMeasure& f, const DiscreteMeasure& g, std::size_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "tensor power must be at least 1");
  const auto fn = tensor_power(f, n), gn = tensor_power(g, n);
  return {w1_discrete(fn, gn).cost, w1_discrete(f, g).cost};
}

CheckPair tensorization_pad_check(const DiscreteMeasure& f, const DiscreteMeasure& g, const DiscreteMeasure& h) {
  require(f.dim() == h.dim(), ErrorCode::shape_mismatch, "padding factor must live on the same space");
  return {2.0 * w1_discrete(tensor_product(f, h), tensor_product(g, h)).cost, w1_discrete(f, g).cost};
}

}  // namespace chaoslab::transport

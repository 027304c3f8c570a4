#include "chaoslab/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "chaoslab/assignment.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/stats.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::chaos {

namespace {

// stream tags keep the reference, the G^N draws and the f draws apart
constexpr std::uint64_t kReferenceStream = 0x5eed0001;
constexpr std::uint64_t kDrawStream = 0x5eed1000;
constexpr std::uint64_t kPartnerStream = 0x5eed2000;

std::vector<double> sample_product(const Density& f, std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (auto& x : out) x = f.sample(rng);
  return out;
}

// equal-size uniform empirical measures on E^j (rows of length j), exact W1 for the bounded cost
double assignment_w1(const std::vector<double>& a, const std::vector<double>& b, std::size_t j) {
  const std::size_t n = a.size() / j;
  std::vector<double> cost(n * n);
  const auto spec = transport::CostSpec::bounded();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      cost[r * n + c] = transport::point_cost(std::span<const double>(a).subspan(r * j, j),
                                              std::span<const double>(b).subspan(c * j, j), 1, spec);
  return transport::solve_assignment(cost, n).cost / static_cast<double>(n);
}

std::size_t default_reference(std::size_t reference_size, std::size_t n) {
  return reference_size == 0 ? 4 * n : reference_size;
}

}  // namespace

std::string to_string(Quantifier q) {
  switch (q) {
    case Quantifier::omega_j:
      return "omega_j";
    case Quantifier::omega_n:
      return "omega_N";
    case Quantifier::omega_inf:
      return "omega_inf";
  }
  return "unknown";
}

Sampler product_sampler(const Density& f, std::size_t n) {
  return [f, n](Rng& rng) { return sample_product(f, n, rng); };
}

Sampler sigma_sampler(std::size_t n) {
  return [n](Rng& rng) {
    auto draw = kac::sample_sigma(n, 1, rng);
    const auto c = draw.front().coords();
    return std::vector<double>(c.begin(), c.end());
  };
}

Sampler two_state_sampler(const Density& g, const Density& h, std::size_t n) {
  return [g, h, n](Rng& rng) { return sample_product(uniform01(rng) < 0.5 ? g : h, n, rng); };
}

ChaosEstimate omega_inf(const Sampler& sampler, const Density& f, std::size_t n, std::size_t mc_reps,
                        std::size_t reference_size, std::uint64_t seed) {
  require(n >= 1 && mc_reps >= 2, ErrorCode::invalid_argument, "omega_inf needs N >= 1 and at least 2 replicas");
  const std::size_t m = default_reference(reference_size, n);
  auto ref_rng = make_rng(seed, kReferenceStream);
  const auto reference = sample_product(f, m, ref_rng);
  const auto values = parallel_map(mc_reps, [&](std::size_t r) {
    auto rng = make_rng(seed, kDrawStream + r);
    const auto x = sampler(rng);
    require(x.size() == n, ErrorCode::shape_mismatch, "sampler returned the wrong number of particles");
    return transport::w1_line_samples(x, reference);
  });
  const auto ms = mean_stderr(values);
  ChaosEstimate out;
  out.quantifier = Quantifier::omega_inf;
  out.n = n;
  out.mc_reps = mc_reps;
  out.value = ms.mean;
  out.std_err = ms.std_err;
  out.reference_size = m;
  return out;
}

ChaosEstimate omega_n(const Sampler& sampler, const Density& f, std::size_t n, std::size_t mc_reps,
                      std::uint64_t seed, bool shared_stream) {
  require(n >= 1 && mc_reps >= 2, ErrorCode::invalid_argument, "omega_N needs N >= 1 and at least 2 replicas");
  const auto values = parallel_map(mc_reps, [&](std::size_t r) {
    auto rng = make_rng(seed, kDrawStream + r);
    const auto x = sampler(rng);
    require(x.size() == n, ErrorCode::shape_mismatch, "sampler returned the wrong number of particles");
    auto partner = shared_stream ? make_rng(seed, kDrawStream + r) : make_rng(seed, kPartnerStream + r);
    const auto y = sample_product(f, n, partner);
    // on the line the permutation semi-distance is the monotone-rearrangement transport cost
    return transport::w1_line_samples(x, y);
  });
  const auto ms = mean_stderr(values);
  ChaosEstimate out;
  out.quantifier = Quantifier::omega_n;
  out.n = n;
  out.mc_reps = mc_reps;
  out.value = ms.mean;
  out.std_err = ms.std_err;
  out.upper_bound = true;
  return out;
}

ChaosEstimate omega_j(const Sampler& sampler, const Density& f, std::size_t j, std::size_t n,
                      std::size_t mc_reps, std::size_t reference_size, std::uint64_t seed) {
  require(j >= 1 && j <= n, ErrorCode::invalid_argument, "omega_j needs 1 <= j <= N");
  constexpr std::size_t groups = 10;
  require(mc_reps >= 2 * groups, ErrorCode::invalid_argument, "omega_j needs at least 20 replicas");
  std::vector<double> blocks(mc_reps * j);
  {
    const auto firsts = [&] {
      std::vector<std::vector<double>> rows(mc_reps);
      parallel_map(mc_reps, [&](std::size_t r) {
        auto rng = make_rng(seed, kDrawStream + r);
        auto x = sampler(rng);
        require(x.size() == n, ErrorCode::shape_mismatch, "sampler returned the wrong number of particles");
        x.resize(j);
        rows[r] = std::move(x);
        return 0.0;
      });
      return rows;
    }();
    for (std::size_t r = 0; r < mc_reps; ++r) std::copy(firsts[r].begin(), firsts[r].end(), blocks.begin() + r * j);
  }
  const std::size_t m = j == 1 ? std::max(default_reference(reference_size, n), mc_reps) : mc_reps;
  auto ref_rng = make_rng(seed, kReferenceStream);
  const auto reference = sample_product(f, m * j, ref_rng);

  const auto distance = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return j == 1 ? transport::w1_line_samples(a, b) : assignment_w1(a, b, j);
  };
  ChaosEstimate out;
  out.quantifier = Quantifier::omega_j;
  out.j = j;
  out.n = n;
  out.mc_reps = mc_reps;
  out.reference_size = m;
  out.value = distance(blocks, reference);

  const std::size_t sub = mc_reps / groups;
  const std::size_t sub_ref = m / groups;
  const auto partial = parallel_map(groups, [&](std::size_t g) {
    std::vector<double> a(blocks.begin() + g * sub * j, blocks.begin() + (g + 1) * sub * j);
    std::vector<double> b(reference.begin() + g * sub_ref * j, reference.begin() + (g + 1) * sub_ref * j);
    return distance(a, b);
  });
  out.std_err = mean_stderr(partial).std_err;
  return out;
}

ChaosEstimate omega_j_sigma(std::size_t n, std::size_t j) {
  require(j == 1 || j == 2, ErrorCode::invalid_argument, "the quadrature path covers j in {1, 2}");
  ChaosEstimate out;
  out.quantifier = Quantifier::omega_j;
  out.j = j;
  out.n = n;
  out.value = 0.5 * kac::sigma_gaussian_l1(n, j);
  out.upper_bound = true;
  return out;
}

CounterexampleReport omega1_counterexample(const Density& g, const Density& h, std::size_t n, std::size_t mc_reps,
                                           std::size_t pair_reps, std::uint64_t seed) {
  require(g.kind() == Density::Kind::gaussian_mixture && h.kind() == Density::Kind::gaussian_mixture,
          ErrorCode::invalid_argument, "the counterexample is built from Gaussian mixtures");
  auto comps = g.components();
  for (auto c : h.components()) comps.push_back(c);
  for (auto& c : comps) c.weight *= 0.5;
  const auto f = Density::gaussian_mixture(comps, "half-sum");
  const auto sampler = two_state_sampler(g, h, n);
  CounterexampleReport out;
  out.n = n;
  out.omega1 = omega_j(sampler, f, 1, n, mc_reps, 0, seed);
  out.omega2 = omega_j(sampler, f, 2, n, std::min(mc_reps, pair_reps), 0, split_seed(seed, 2));
  return out;
}

}  // namespace chaoslab::chaos

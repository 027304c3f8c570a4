#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chaoslab/density.hpp"
#include "chaoslab/rng.hpp"

namespace chaoslab::chaos {

/// Draws one exchangeable configuration (x_1, ..., x_N) on the real line.
using Sampler = std::function<std::vector<double>(Rng&)>;

Sampler product_sampler(const Density& f, std::size_t n);
Sampler sigma_sampler(std::size_t n);
/// 1/2 g^{(x)N} + 1/2 h^{(x)N}.
Sampler two_state_sampler(const Density& g, const Density& h, std::size_t n);

enum class Quantifier { omega_j, omega_n, omega_inf };
std::string to_string(Quantifier q);

struct ChaosEstimate {
  Quantifier quantifier = Quantifier::omega_inf;
  std::size_t j = 0;  // block size for omega_j
  std::size_t n = 0;
  std::size_t mc_reps = 0;
  double value = 0.0;
  double std_err = 0.0;
  std::size_t reference_size = 0;
  bool upper_bound = false;  // value estimates an upper bound of the quantifier
};

/// E W1(mu^N_X, f) for X ~ G^N, with f replaced by a fixed seeded sample of size M
/// (M = 0 selects 4N). Bounded cost min(|x - y|, 1).
ChaosEstimate omega_inf(const Sampler& sampler, const Density& f, std::size_t n, std::size_t mc_reps,
                        std::size_t reference_size, std::uint64_t seed);

/// Mean of w1(X, Y) over pairs X ~ G^N, Y ~ f^{(x)N}. With shared_stream both draws of a pair
/// consume the same generator state, which couples them; otherwise they are independent.
/// Either way the result bounds W1(G^N, f^{(x)N}) from above.
ChaosEstimate omega_n(const Sampler& sampler, const Density& f, std::size_t n, std::size_t mc_reps,
                      std::uint64_t seed, bool shared_stream = true);

/// W1(G^N_j, f^{(x)j}) between the pooled first-j blocks of mc_reps draws and a seeded
/// sample of f^{(x)j}. For j = 1 the reference has max(M, mc_reps) points (M = 0: 4N) and the
/// line solver is used; for j >= 2 both samples have mc_reps points and the exact assignment is used.
/// The standard error comes from 10 disjoint subsamples, rescaled by 1/sqrt(10).
ChaosEstimate omega_j(const Sampler& sampler, const Density& f, std::size_t j, std::size_t n,
                      std::size_t mc_reps, std::size_t reference_size, std::uint64_t seed);

/// ||sigma^N_j - gamma^{(x)j}||_{L^1} / 2 by quadrature, j in {1, 2}: a rigorous bound on Omega_j(sigma^N; gamma).
ChaosEstimate omega_j_sigma(std::size_t n, std::size_t j);

/// Symmetric probability table on S^N, S = {0, ..., s-1}; index sum_i x_i s^{N-1-i}.
class SymmetricPmf {
 public:
  SymmetricPmf(std::size_t alphabet, std::size_t n, std::vector<double> probs);

  static SymmetricPmf product(const std::vector<double>& p, std::size_t n);
  /// Random weights averaged over permutations.
  static SymmetricPmf random(std::size_t alphabet, std::size_t n, Rng& rng);

  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t index) const noexcept { return probs_[index]; }
  std::vector<std::size_t> state(std::size_t index) const;
  std::size_t index(const std::vector<std::size_t>& state) const;

 private:
  std::size_t alphabet_;
  std::size_t n_;
  std::vector<double> probs_;
};

struct GrunbaumResult {
  double tv;     // sum of |G^N_j - \hat G^N_j| over S^j
  double bound;  // 2 j (j - 1) / N
  double w1;     // W1(G^N_j, \hat G^N_j) for the 0/1 cost on S, <= tv / 2
  bool holds() const { return tv <= bound + 1e-12; }
};

/// Exact comparison of the j-marginal of G^N with the law of (mu^N_X)^{(x)j}, X ~ G^N.
GrunbaumResult grunbaum_exact(const SymmetricPmf& g, std::size_t j);

struct IdentityPair {
  double lhs;  // W1(F, G) on S^N, cost (1/N) sum_i min(|a_{x_i} - a_{y_i}|, 1)
  double rhs;  // the same problem on permutation orbits with the w1 cost between representatives
};

/// `points` gives the position a_s in R of each letter.
IdentityPair pushforward_identity_exact(const SymmetricPmf& f, const SymmetricPmf& g, const std::vector<double>& points);

struct CounterexampleReport {
  std::size_t n = 0;
  ChaosEstimate omega1;
  ChaosEstimate omega2;
  std::string reference = "f = (g + h) / 2";
  bool separated() const { return omega2.value > 5.0 * omega1.value; }
};

/// G^N = 1/2 g^{(x)N} + 1/2 h^{(x)N} against f = (g + h)/2. Omega_1 uses `mc_reps` draws;
/// Omega_2 uses min(mc_reps, pair_reps) draws and the exact assignment.
CounterexampleReport omega1_counterexample(const Density& g, const Density& h, std::size_t n, std::size_t mc_reps,
                                           std::size_t pair_reps, std::uint64_t seed);

}  // namespace chaoslab::chaos

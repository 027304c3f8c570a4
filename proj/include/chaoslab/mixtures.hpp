#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chaoslab/density.hpp"
#include "chaoslab/fit.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/rng.hpp"

namespace chaoslab::mix {

struct Atom {
  double alpha;
  Density f;
};

/// pi = sum_i alpha_i delta_{f_i}, a finite De Finetti mixture.
class Mixture {
 public:
  explicit Mixture(std::vector<Atom> atoms);

  /// theta a + (1 - theta) b; the atom lists are concatenated.
  static Mixture combine(double theta, const Mixture& a, const Mixture& b);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// log pi_j(v) = log sum_i alpha_i prod_k f_i(v_k), j = v.size().
  double log_marginal(std::span<const double> v) const;
  /// Picks atom i with probability alpha_i, fills `out` with i.i.d. draws from f_i, returns i.
  std::size_t sample(std::span<double> out, Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
};

/// pi_j = sum_i alpha_i f_i^{(x)j} on the tensor grid, j in {1, 2}.
TensorGrid mixture_marginal(const Mixture& pi, std::size_t j, double half_width = 10.0, std::size_t n_axis = 801);

/// H-functional of the mixture: sum_i alpha_i H(f_i); +infinity when any atom has infinite entropy.
double level3_entropy(const Mixture& pi);
/// sum_i alpha_i I(f_i).
double level3_fisher(const Mixture& pi);

struct EntropyCurve {
  std::vector<int> js;
  std::vector<double> values;   // H(pi_j), normalized
  std::vector<double> stderrs;
  double level3 = 0.0;
  std::vector<double> gaps;     // level3 - H(pi_j)
  RateReport gap_fit;           // fitted on the positive gaps
  bool monotone = true;         // H(pi_j) nondecreasing within 3 stderr
  bool below_level3 = true;     // H(pi_j) <= level3 + 3 stderr
};

/// Monte Carlo plug-in of H(pi_j) = (1/j) E log pi_j(V). The control variate
/// (1/j) sum_k log f_I(v_k), with I the drawn atom, has mean level3_entropy(pi) exactly;
/// stderr over 20 batches of `samples / 20` draws.
EntropyCurve marginal_entropy_curve(const Mixture& pi, const std::vector<int>& js, std::size_t samples,
                                    std::uint64_t seed);

struct CauchyProbe {
  RateReport report;              // Monte Carlo E ||mu^N_X - rho||^2_{H^{-s}} over ns
  std::vector<double> exact;      // (Phi_s(0) - E Phi_s(v - v')) / N by quadrature
  std::vector<double> bound;      // 2 Phi_s(0) / N
  std::size_t violations = 0;     // estimate > bound + 3 stderr
};

/// rho drawn from pi, X ~ rho^{(x)N}. Each replica contributes the unbiased U-statistic
/// (Phi_s(0) - (N(N-1))^{-1} sum_{a != b} Phi_s(x_a - x_b)) / N of the squared distance.
CauchyProbe definetti_cauchy_probe(const Mixture& pi, const std::vector<int>& ns, double s, std::size_t reps,
                                   std::uint64_t seed);

}  // namespace chaoslab::mix

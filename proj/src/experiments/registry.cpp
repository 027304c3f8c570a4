#include "chaoslab/experiments.hpp"
#include "suites.hpp"

namespace chaoslab::exp {

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> all = {
      {"identities", "eq:equivW1-2", 1,
       "tensorization, pushforward identity, permutation brute force, Grunbaum bound (exact)", identities},
      {"kernel-oracles", "eq:defPhi", 2, "Phi_s against closed and Fourier forms, H^-s oracle, W1/W2 comparisons",
       kernel_oracles},
      {"poincare-rate", "estim:Poincaré2", 3, "sigma^N against gamma: L1 marginal bound and radial-projection rate",
       poincare_rate},
      {"clt-rate", "estim:localTCL2", 4, "local CLT sup-norm rate for iterated renormalized convolutions", clt_rate},
      {"conditioned-products", "eq:ChaosEstimFN", 5, "L1 distance of the conditioned product marginal to f",
       conditioned_products},
      {"entropy-chaos", "ineq:EntropCvgce1", 6, "H(F^N|sigma^N) - H(f|gamma) through the partition function",
       entropy_chaos},
      {"information", "prop:HWI", 7, "entropy/Fisher closed forms, tensorization, superadditivity, HWI, k-NN",
       information_suite},
      {"omega1-counterexample", "Th:EquivChaos", 8, "Omega_1 vanishes while Omega_2 does not for a two-state mixture",
       omega1_counterexample},
      {"mixtures", "eq:Rob&Ruelle", 9, "level-3 entropy, marginal entropy curve, De Finetti Cauchy probe",
       mixtures_suite},
  };
  return all;
}

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace chaoslab::exp

#pragma once

#include "chaoslab/experiments.hpp"

namespace chaoslab::exp {

Result identities(const Config& c);
Result kernel_oracles(const Config& c);
Result poincare_rate(const Config& c);
Result clt_rate(const Config& c);
Result conditioned_products(const Config& c);
Result entropy_chaos(const Config& c);
Result information_suite(const Config& c);
Result omega1_counterexample(const Config& c);
Result mixtures_suite(const Config& c);

}  // namespace chaoslab::exp

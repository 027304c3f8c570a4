#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chaoslab {

struct MeanStderr {
  double mean = 0.0;
  double std_err = 0.0;
};

MeanStderr mean_stderr(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample test against a continuous cdf.
KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

/// Worker cap used by the Monte Carlo loops (0 = hardware concurrency).
void set_thread_limit(unsigned threads);
unsigned thread_limit();

/// Evaluates fn(i) for i in [0, count) on up to thread_limit() workers. Results are
/// stored by index, so the output does not depend on scheduling.
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace chaoslab

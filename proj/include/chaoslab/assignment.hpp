#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chaoslab::transport {

struct Assignment {
  double cost;
  std::vector<std::size_t> row_to_col;
};

/// Minimum-cost perfect matching on a dense n x n row-major cost matrix
/// (shortest augmenting paths with potentials, O(n^3)). Ties resolve to the lowest column index.
Assignment solve_assignment(std::span<const double> cost, std::size_t n);

/// Exact transportation problem between supplies a and demands b (each summing to 1) for a
/// dense row-major cost matrix, by the transportation simplex with spanning-tree bases.
struct SimplexResult {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<double> flows;
  double cost;
  std::size_t iterations;
};
SimplexResult solve_transport(std::span<const double> a, std::span<const double> b, std::span<const double> cost);

}  // namespace chaoslab::transport

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoslab/assignment.hpp"
#include "chaoslab/error.hpp"

namespace chaoslab::transport {

namespace {

struct Cell {
  std::size_t row;
  std::size_t col;
  double flow;
};

// Spanning-tree basis over n row nodes and m column nodes (column j is node n + j).
class Basis {
 public:
  Basis(std::size_t n, std::size_t m) : n_(n), m_(m), adj_(n + m) {}

  void add(const Cell& c) {
    const std::size_t id = cells_.size();
    cells_.push_back(c);
    adj_[c.row].push_back(id);
    adj_[n_ + c.col].push_back(id);
  }

  void replace(std::size_t id, const Cell& c) {
    detach(cells_[id].row, id);
    detach(n_ + cells_[id].col, id);
    cells_[id] = c;
    adj_[c.row].push_back(id);
    adj_[n_ + c.col].push_back(id);
  }

  // Potentials and rooted-tree bookkeeping from node 0.
  void rebuild(std::span<const double> cost) {
    const std::size_t nodes = n_ + m_;
    pot_.assign(nodes, 0.0);
    parent_cell_.assign(nodes, npos);
    parent_.assign(nodes, npos);
    depth_.assign(nodes, 0);
    std::vector<char> seen(nodes, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (const std::size_t id : adj_[node]) {
        const Cell& c = cells_[id];
        const std::size_t other = node < n_ ? n_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = 1;
        const double cij = cost[c.row * m_ + c.col];
        // u_i + v_j = c_ij on basic cells
        pot_[other] = cij - pot_[node];
        parent_[other] = node;
        parent_cell_[other] = id;
        depth_[other] = depth_[node] + 1;
        stack.push_back(other);
      }
    }
    for (std::size_t k = 0; k < nodes; ++k)
      if (!seen[k]) fail(ErrorCode::non_convergence, "transport basis is not a spanning tree");
  }

  double reduced(std::span<const double> cost, std::size_t i, std::size_t j) const {
    return cost[i * m_ + j] - pot_[i] - pot_[n_ + j];
  }

  // Cells on the tree path from column node q to row node p, in order.
  std::vector<std::size_t> path(std::size_t p, std::size_t q) const {
    std::size_t a = n_ + q, b = p;
    std::vector<std::size_t> from_a, from_b;
    while (depth_[a] > depth_[b]) {
      from_a.push_back(parent_cell_[a]);
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      from_b.push_back(parent_cell_[b]);
      b = parent_[b];
    }
    while (a != b) {
      from_a.push_back(parent_cell_[a]);
      a = parent_[a];
      from_b.push_back(parent_cell_[b]);
      b = parent_[b];
    }
    from_a.insert(from_a.end(), from_b.rbegin(), from_b.rend());
    return from_a;
  }

  std::vector<Cell>& cells() { return cells_; }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void detach(std::size_t node, std::size_t id) {
    auto& list = adj_[node];
    list.erase(std::find(list.begin(), list.end(), id));
  }

  std::size_t n_, m_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<double> pot_;
  std::vector<std::size_t> parent_cell_, parent_, depth_;
};

}  // namespace

SimplexResult solve_transport(std::span<const double> a, std::span<const double> b, std::span<const double> cost) {
  const std::size_t n = a.size(), m = b.size();
  require(n > 0 && m > 0 && cost.size() == n * m, ErrorCode::shape_mismatch, "transport cost must be n x m");
  double sa = 0.0, sb = 0.0, cmax = 0.0;
  for (double x : a) sa += x;
  for (double x : b) sb += x;
  for (double c : cost) cmax = std::max(cmax, std::abs(c));
  require(std::abs(sa - sb) <= 1e-9 * std::max(1.0, sa), ErrorCode::invalid_argument,
          "transport marginals have different masses");

  // North-west corner start: exactly n + m - 1 cells, degenerate ones included.
  Basis basis(n, m);
  {
    std::vector<double> ra(a.begin(), a.end()), rb(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
      const double f = std::max(0.0, std::min(ra[i], rb[j]));
      basis.add({i, j, f});
      ra[i] -= f;
      rb[j] -= f;
      if (i == n - 1 && j == m - 1) break;
      if (j == m - 1 || (i < n - 1 && ra[i] <= rb[j]))
        ++i;
      else
        ++j;
    }
  }

  const double eps = 1e-12 * (cmax + 1.0);
  const std::size_t total = n * m;
  const std::size_t block = std::max<std::size_t>(64, static_cast<std::size_t>(std::sqrt(double(total))));
  const std::size_t max_iter = 50 * (n + m) * (n + m) + 1000;
  std::size_t cursor = 0, iter = 0;

  for (;; ++iter) {
    if (iter > max_iter) fail(ErrorCode::non_convergence, "transport simplex exceeded the pivot budget");
    basis.rebuild(cost);
    // Block pricing: scan blocks from the cursor, take the best candidate of the first block that has one.
    double best = -eps;
    std::size_t enter = total, scanned = 0;
    while (scanned < total) {
      const std::size_t stop = std::min(total, scanned + block);
      for (; scanned < stop; ++scanned) {
        const std::size_t k = cursor;
        cursor = cursor + 1 == total ? 0 : cursor + 1;
        const double r = basis.reduced(cost, k / m, k % m);
        if (r < best) {
          best = r;
          enter = k;
        }
      }
      if (enter != total) break;
    }
    if (enter == total) break;

    const std::size_t p = enter / m, q = enter % m;
    const auto cyc = basis.path(p, q);
    auto& cells = basis.cells();
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = cyc.front();
    for (std::size_t k = 0; k < cyc.size(); k += 2) {
      if (cells[cyc[k]].flow < theta) {
        theta = cells[cyc[k]].flow;
        leave = cyc[k];
      }
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) cells[cyc[k]].flow += (k % 2 == 0 ? -theta : theta);
    basis.replace(leave, {p, q, theta});
  }

  SimplexResult out{{}, {}, {}, 0.0, iter};
  for (const Cell& c : basis.cells()) {
    if (c.flow <= 0.0) continue;
    out.rows.push_back(c.row);
    out.cols.push_back(c.col);
    out.flows.push_back(c.flow);
    out.cost += c.flow * cost[c.row * m + c.col];
  }
  return out;
}

}  // namespace chaoslab::transport

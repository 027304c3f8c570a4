#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "chaoslab/assignment.hpp"
#include "chaoslab/chaos.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::chaos {

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

SymmetricPmf::SymmetricPmf(std::size_t alphabet, std::size_t n, std::vector<double> probs)
    : alphabet_(alphabet), n_(n), probs_(std::move(probs)) {
  require(alphabet >= 1 && n >= 1, ErrorCode::invalid_argument, "empty alphabet or N = 0");
  require(std::pow(static_cast<double>(alphabet), static_cast<double>(n)) <= 1e6, ErrorCode::size_limit,
          "|S|^N exceeds 10^6 states");
  require(probs_.size() == ipow(alphabet, n), ErrorCode::shape_mismatch, "table size is not |S|^N");
  double total = 0.0;
  for (double p : probs_) {
    require(p >= 0.0 && std::isfinite(p), ErrorCode::invalid_argument, "negative or non-finite probability");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::invalid_argument, "probabilities do not sum to 1");
  // adjacent transpositions generate the symmetric group
  for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
    auto st = state(idx);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (st[i] == st[i + 1]) continue;
      std::swap(st[i], st[i + 1]);
      require(std::abs(probs_[index(st)] - probs_[idx]) <= 1e-14, ErrorCode::asymmetric_input,
              "table is not invariant under permutations");
      std::swap(st[i], st[i + 1]);
    }
  }
}

std::vector<std::size_t> SymmetricPmf::state(std::size_t idx) const {
  std::vector<std::size_t> st(n_);
  for (std::size_t i = n_; i-- > 0;) {
    st[i] = idx % alphabet_;
    idx /= alphabet_;
  }
  return st;
}

std::size_t SymmetricPmf::index(const std::vector<std::size_t>& st) const {
  std::size_t idx = 0;
  for (auto s : st) idx = idx * alphabet_ + s;
  return idx;
}

SymmetricPmf SymmetricPmf::product(const std::vector<double>& p, std::size_t n) {
  const std::size_t a = p.size();
  std::vector<double> probs(ipow(a, n), 1.0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = 0; i < n; ++i) {
      probs[idx] *= p[rem % a];
      rem /= a;
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& q : probs) q /= total;
  return SymmetricPmf(a, n, std::move(probs));
}

SymmetricPmf SymmetricPmf::random(std::size_t alphabet, std::size_t n, Rng& rng) {
  const std::size_t size = ipow(alphabet, n);
  std::vector<std::size_t> canon(size);
  std::map<std::size_t, std::pair<double, std::size_t>> orbit;  // canonical index -> (weight sum, size)
  std::vector<std::size_t> st(n);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = n; i-- > 0;) {
      st[i] = rem % alphabet;
      rem /= alphabet;
    }
    std::sort(st.begin(), st.end());
    std::size_t c = 0;
    for (auto s : st) c = c * alphabet + s;
    canon[idx] = c;
    auto& o = orbit[c];
    o.first += uniform01(rng);
    o.second += 1;
  }
  std::vector<double> probs(size);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const auto& o = orbit[canon[idx]];
    probs[idx] = o.first / static_cast<double>(o.second);
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& q : probs) q /= total;
  // equal orbit members received bitwise-equal values, so the symmetry check is exact
  return SymmetricPmf(alphabet, n, std::move(probs));
}

GrunbaumResult grunbaum_exact(const SymmetricPmf& g, std::size_t j) {
  const std::size_t a = g.alphabet(), n = g.n();
  require(j >= 1 && j <= n, ErrorCode::invalid_argument, "need 1 <= j <= N");
  const std::size_t cells = ipow(a, j);
  const std::size_t tail = ipow(a, n - j);
  std::vector<double> marginal(cells, 0.0), empirical(cells, 0.0);
  std::vector<double> freq(a);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const double p = g[idx];
    marginal[idx / tail] += p;
    if (p == 0.0) continue;
    std::fill(freq.begin(), freq.end(), 0.0);
    for (auto s : g.state(idx)) freq[s] += 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < cells; ++c) {
      double w = p;
      std::size_t rem = c;
      for (std::size_t i = 0; i < j; ++i) {
        w *= freq[rem % a];
        rem /= a;
      }
      empirical[c] += w;
    }
  }
  GrunbaumResult out;
  out.tv = 0.0;
  for (std::size_t c = 0; c < cells; ++c) out.tv += std::abs(marginal[c] - empirical[c]);
  out.bound = 2.0 * static_cast<double>(j * (j - 1)) / static_cast<double>(n);

  // W1 on S^j with the normalized 0/1 cost: letters as integer points, truncation 1
  std::vector<double> points(cells * j);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rem = c;
    for (std::size_t i = j; i-- > 0;) {
      points[c * j + i] = static_cast<double>(rem % a);
      rem /= a;
    }
  }
  const DiscreteMeasure mu(j, 1, points, marginal), nu(j, 1, points, empirical);
  out.w1 = transport::w1_discrete(mu, nu).cost;
  return out;
}

IdentityPair pushforward_identity_exact(const SymmetricPmf& f, const SymmetricPmf& g, const std::vector<double>& points) {
  require(f.alphabet() == g.alphabet() && f.n() == g.n(), ErrorCode::shape_mismatch, "tables on different spaces");
  require(points.size() == f.alphabet(), ErrorCode::shape_mismatch, "one position per letter required");
  require(f.size() <= 10000, ErrorCode::size_limit, "|S|^N exceeds 10^4 states");
  const std::size_t n = f.n(), size = f.size();

  std::vector<double> coords(size * n);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const auto st = f.state(idx);
    for (std::size_t i = 0; i < n; ++i) coords[idx * n + i] = points[st[i]];
  }
  std::vector<double> fw(size), gw(size);
  for (std::size_t idx = 0; idx < size; ++idx) {
    fw[idx] = f[idx];
    gw[idx] = g[idx];
  }
  IdentityPair out;
  out.lhs = transport::w1_discrete(DiscreteMeasure(n, 1, coords, fw), DiscreteMeasure(n, 1, coords, gw)).cost;

  // orbits, represented by sorted tuples
  std::map<std::vector<std::size_t>, std::size_t> orbit_of;
  std::vector<std::vector<double>> reps;
  std::vector<double> fo, go;
  for (std::size_t idx = 0; idx < size; ++idx) {
    auto st = f.state(idx);
    std::sort(st.begin(), st.end());
    auto [it, fresh] = orbit_of.try_emplace(st, reps.size());
    if (fresh) {
      std::vector<double> rep(n);
      for (std::size_t i = 0; i < n; ++i) rep[i] = points[st[i]];
      reps.push_back(std::move(rep));
      fo.push_back(0.0);
      go.push_back(0.0);
    }
    fo[it->second] += f[idx];
    go[it->second] += g[idx];
  }
  const std::size_t k = reps.size();
  std::vector<double> cost(k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) cost[r * k + c] = transport::w1_line_samples(reps[r], reps[c]);
  out.rhs = transport::solve_transport(fo, go, cost).cost;
  return out;
}

}  // namespace chaoslab::chaos

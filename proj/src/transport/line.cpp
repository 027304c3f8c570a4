#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>

#include "chaoslab/error.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::transport {

namespace {

struct Atom {
  double x;
  double excess;  // mass of mu minus mass of nu at x
};

std::vector<Atom> signed_atoms(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::shape_mismatch, "line transport needs measures on R");
  std::vector<Atom> atoms;
  atoms.reserve(mu.size() + nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) atoms.push_back({mu.point(i)[0], mu.weight(i)});
  for (std::size_t i = 0; i < nu.size(); ++i) atoms.push_back({nu.point(i)[0], -nu.weight(i)});
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && out.back().x == a.x)
      out.back().excess += a.excess;
    else
      out.push_back(a);
  }
  return out;
}

// Convex piecewise-linear function of the cumulative hub flow G:
//   value(G) = floor + sum_L w max(0, a - G) + sum_R w max(0, G - b),  max L <= min R.
class SlopeFunction {
 public:
  explicit SlopeFunction(double c) {
    left_[0.0] = c;
    right_[0.0] = c;
  }

  // Adds w |G - a|.
  void add_abs(double a, double w) {
    if (w <= 0.0) return;
    const double l = std::prev(left_.end())->first;
    const double r = right_.begin()->first;
    if (a < l) {
      left_[a] += 2.0 * w;
      double need = w;
      while (need > 0.0) {
        auto top = std::prev(left_.end());
        const double take = std::min(need, top->second);
        floor_ += take * (top->first - a);
        right_[top->first] += take;
        need -= take;
        if (take >= top->second)
          left_.erase(top);
        else
          top->second -= take;
      }
    } else if (a > r) {
      right_[a] += 2.0 * w;
      double need = w;
      while (need > 0.0) {
        auto bot = right_.begin();
        const double take = std::min(need, bot->second);
        floor_ += take * (a - bot->first);
        left_[bot->first] += take;
        need -= take;
        if (take >= bot->second)
          right_.erase(bot);
        else
          bot->second -= take;
      }
    } else {
      left_[a] += w;
      right_[a] += w;
    }
  }

  // Infimal convolution with c |.|: slopes are clipped to [-c, c].
  void clip(double c) {
    clip_side(left_, c, true);
    clip_side(right_, c, false);
  }

  double value_at(double g) const {
    double v = floor_;
    for (const auto& [a, w] : left_) v += w * std::max(0.0, a - g);
    for (const auto& [b, w] : right_) v += w * std::max(0.0, g - b);
    return v;
  }

 private:
  static void clip_side(std::map<double, double>& side, double c, bool from_front) {
    double total = 0.0;
    for (const auto& kv : side) total += kv.second;
    double excess = total - c;
    while (excess > 0.0 && side.size() > 1) {
      auto it = from_front ? side.begin() : std::prev(side.end());
      const double take = std::min(excess, it->second);
      excess -= take;
      if (take >= it->second)
        side.erase(it);
      else
        it->second -= take;
    }
    if (excess > 0.0) side.begin()->second -= excess;
  }

  double floor_ = 0.0;
  std::map<double, double> left_, right_;
};

}  // namespace

// The cost min(|x - y|, T) is the shortest-path metric of the line with an extra hub joined
// to every atom by an edge of length T/2, so W1 is a min-cost transshipment on that graph.
// With g_k the flow from atom k into the hub and G_k its partial sums, the objective is
//   sum_k (T/2) |g_k| + sum_k (x_{k+1} - x_k) |E_k - G_k|,  G_{K-1} = 0,
// which is minimized exactly by dynamic programming over convex piecewise-linear functions.
double w1_line(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double truncation) {
  require(truncation > 0.0, ErrorCode::invalid_argument, "truncation must be positive");
  const auto atoms = signed_atoms(mu, nu);
  if (atoms.size() < 2) return 0.0;
  if (!std::isfinite(truncation)) return w1_line_unbounded(mu, nu);
  const double c = 0.5 * truncation;
  SlopeFunction phi(c);
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    cumulative += atoms[k].excess;
    phi.add_abs(cumulative, atoms[k + 1].x - atoms[k].x);
    phi.clip(c);
  }
  return std::max(0.0, phi.value_at(0.0));
}

double w1_line_samples(std::span<const double> x, std::span<const double> y, double truncation) {
  require(!x.empty() && !y.empty(), ErrorCode::invalid_argument, "empty sample");
  return w1_line(DiscreteMeasure::uniform(1, 1, {x.begin(), x.end()}),
                 DiscreteMeasure::uniform(1, 1, {y.begin(), y.end()}), truncation);
}

double w1_line_unbounded(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const auto atoms = signed_atoms(mu, nu);
  double total = 0.0, cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    cumulative += atoms[k].excess;
    total += std::abs(cumulative) * (atoms[k + 1].x - atoms[k].x);
  }
  return total;
}

double w2_line(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::shape_mismatch, "line transport needs measures on R");
  const auto a = mu.merged(), b = nu.merged();
  std::size_t i = 0, j = 0;
  double ra = a.weight(0), rb = b.weight(0), total = 0.0;
  while (i < a.size() && j < b.size()) {
    const double m = std::min(ra, rb);
    const double d = a.point(i)[0] - b.point(j)[0];
    total += m * d * d;
    ra -= m;
    rb -= m;
    if (ra <= 1e-15 && i + 1 < a.size()) {
      ra += a.weight(++i);
    } else if (ra <= 1e-15) {
      ++i;
    }
    if (rb <= 1e-15 && j + 1 < b.size()) {
      rb += b.weight(++j);
    } else if (rb <= 1e-15) {
      ++j;
    }
  }
  return std::sqrt(std::max(0.0, total));
}

}  // namespace chaoslab::transport

#include "suites.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chaoslab/chaos.hpp"
#include "chaoslab/clt.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/information.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/mixtures.hpp"
#include "chaoslab/oracles.hpp"
#include "chaoslab/sobolev.hpp"
#include "chaoslab/stats.hpp"
#include "chaoslab/transport.hpp"

namespace chaoslab::exp {

namespace {

constexpr double kGaussianEntropy = -1.418939;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; n *= 2) out.push_back(n);
  return out;
}

std::vector<int> ns_or(const Config& c, std::vector<int> fallback) {
  if (c.ns.empty()) return fallback;
  for (std::size_t i = 0; i < c.ns.size(); ++i)
    require(c.ns[i] > 0 && (i == 0 || c.ns[i] > c.ns[i - 1]), ErrorCode::invalid_argument,
            "ns must be positive and strictly increasing");
  return c.ns;
}

std::size_t reps_or(const Config& c, std::size_t fallback) { return c.mc_reps ? c.mc_reps : fallback; }
double s_or(const Config& c, double fallback) { return c.s > 0.0 ? c.s : fallback; }

Density read_custom(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot open custom grid '" + path + "'");
  std::vector<double> xs, vs;
  double x, v;
  while (in >> x >> v) {
    xs.push_back(x);
    vs.push_back(v);
  }
  require(xs.size() >= 16, ErrorCode::invalid_argument, "custom grid needs at least 16 'x value' lines");
  const double half = -xs.front();
  const double h = 2.0 * half / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    require(std::abs(xs[i] - (-half + static_cast<double>(i) * h)) <= 1e-9 * std::max(1.0, half),
            ErrorCode::invalid_argument, "custom grid must be x_i = -L + i 2L/M");
  // the id keys the partition cache, so it must change with the grid contents
  std::uint64_t digest = mix_seed(vs.size());
  for (double y : vs) digest = mix_seed(digest ^ std::bit_cast<std::uint64_t>(y));
  char id[32];
  std::snprintf(id, sizeof(id), "custom-%016llx", static_cast<unsigned long long>(digest));
  // standardized, as the sphere and CLT suites require mean 0 and variance 1
  const auto f = Density::tabulated(GridDensity(half, std::move(vs)), id);
  const double m = f.mean(), sd = std::sqrt(f.variance());
  return f.affine(-m / sd, 1.0 / sd);
}

Density pick_density(const Config& c, const std::string& fallback) {
  const std::string name = c.density.empty() ? fallback : c.density;
  if (name == "gaussian") return Density::gaussian();
  if (name == "uniform") return Density::uniform(-std::sqrt(3.0), std::sqrt(3.0));
  if (name == "bimodal") return Density::bimodal();
  if (name == "skewed-bimodal") return Density::skewed_bimodal();
  if (name == "custom") return read_custom(c.custom_grid);
  fail(ErrorCode::invalid_argument, "unknown density '" + name + "'");
}

std::filesystem::path cache_dir(const Config& c) {
  return c.cache_dir.empty() ? kac::default_cache_dir() : std::filesystem::path(c.cache_dir);
}

void add_fit(Result& r, const std::string& quantity, const RateReport& rep) {
  r.fits.push_back({quantity, rep});
  r.row(0, quantity + ":slope", rep.fitted_slope, 0.0,
        "ci=[" + fmt(rep.slope_ci.first) + "," + fmt(rep.slope_ci.second) + "]");
}

bool in_window(double x, double lo, double hi) { return x > lo && x < hi; }

DiscreteMeasure random_line_measure(Rng& rng, std::size_t atoms, double spread) {
  std::vector<double> pts(atoms), w(atoms);
  double total = 0.0;
  for (std::size_t a = 0; a < atoms; ++a) {
    pts[a] = spread * (2.0 * uniform01(rng) - 1.0);
    w[a] = 0.05 + uniform01(rng);
    total += w[a];
  }
  for (auto& x : w) x /= total;
  return DiscreteMeasure(1, 1, std::move(pts), std::move(w));
}

DiscreteMeasure gaussian_empirical(Rng& rng, std::size_t n, double shift) {
  std::vector<double> pts(n);
  for (auto& x : pts) x = shift + standard_normal(rng);
  return DiscreteMeasure::uniform(1, 1, std::move(pts));
}

DiscreteMeasure pmf_measure(const chaos::SymmetricPmf& p, const std::vector<double>& letters) {
  std::vector<double> pts(p.size() * p.n()), w(p.size());
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    const auto st = p.state(idx);
    for (std::size_t i = 0; i < p.n(); ++i) pts[idx * p.n() + i] = letters[st[i]];
    w[idx] = p[idx];
  }
  return DiscreteMeasure(p.n(), 1, std::move(pts), std::move(w));
}

}  // namespace

Result identities(const Config& c) {
  Result r;
  auto rng = make_rng(c.seed, 1);

  double tensor_gap = 0.0, pad_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto f = random_line_measure(rng, 2 + t % 3, 1.5), g = random_line_measure(rng, 2 + (t + 1) % 3, 1.5);
    const auto h = random_line_measure(rng, 3, 1.5);
    const auto tc = transport::tensorization_check(f, g, 2 + t % 2);
    const auto pc = transport::tensorization_pad_check(f, g, h);
    tensor_gap = std::max(tensor_gap, std::abs(tc.lhs - tc.rhs));
    pad_gap = std::max(pad_gap, std::abs(pc.lhs - pc.rhs));
  }
  r.row(0, "tensorization_max_gap", tensor_gap);
  r.row(0, "padding_max_gap", pad_gap);
  r.check("W1(f^N, g^N) = W1(f, g)", tensor_gap <= 1e-9, "max gap " + fmt(tensor_gap));
  r.check("2 W1(f h, g h) = W1(f, g)", pad_gap <= 1e-9, "max gap " + fmt(pad_gap));

  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{2, 3}, {2, 6}, {3, 3}, {3, 4}, {4, 3}, {2, 8}};
  double push_gap = 0.0, product_gap = 0.0, self_gap = 0.0;
  for (const auto& [alphabet, n] : shapes) {
    std::vector<double> letters(alphabet);
    for (auto& x : letters) x = 1.5 * (2.0 * uniform01(rng) - 1.0);
    for (int t = 0; t < 4; ++t) {
      const auto f = chaos::SymmetricPmf::random(alphabet, n, rng), g = chaos::SymmetricPmf::random(alphabet, n, rng);
      const auto id = chaos::pushforward_identity_exact(f, g, letters);
      push_gap = std::max(push_gap, std::abs(id.lhs - id.rhs));
      const auto same = chaos::pushforward_identity_exact(f, f, letters);
      self_gap = std::max({self_gap, std::abs(same.lhs), std::abs(same.rhs)});
    }
    std::vector<double> p(alphabet), q(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a) {
      p[a] = 0.1 + uniform01(rng);
      q[a] = 0.1 + uniform01(rng);
    }
    const auto fp = chaos::SymmetricPmf::product(p, n), gq = chaos::SymmetricPmf::product(q, n);
    const auto id = chaos::pushforward_identity_exact(fp, gq, letters);
    const auto one = transport::w1_discrete(pmf_measure(chaos::SymmetricPmf::product(p, 1), letters),
                                            pmf_measure(chaos::SymmetricPmf::product(q, 1), letters))
                         .cost;
    product_gap = std::max({product_gap, std::abs(id.lhs - one), std::abs(id.rhs - one)});
    r.row(static_cast<long>(n), "pushforward_lhs", id.lhs, 0.0, "S=" + std::to_string(alphabet) + " product");
    r.row(static_cast<long>(n), "pushforward_rhs", id.rhs, 0.0, "S=" + std::to_string(alphabet) + " product");
  }
  r.row(0, "pushforward_max_gap", push_gap);
  r.check("W1(F, G) = W1 on orbits", push_gap <= 1e-9, "max gap " + fmt(push_gap));
  r.check("W1(f^N, g^N) = W1(f, g) on orbits", product_gap <= 1e-9, "max gap " + fmt(product_gap));
  r.check("F = G gives (0, 0)", self_gap <= 1e-9, "max " + fmt(self_gap));

  double brute_gap = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 6, d = t < 80 ? 1 : 2;
    std::vector<double> a(n * d), b(n * d);
    for (auto& x : a) x = standard_normal(rng);
    for (auto& x : b) x = 0.5 + standard_normal(rng);
    const Configuration x(d, a), y(d, b);
    brute_gap = std::max(brute_gap, std::abs(transport::w1_config(x, y).value - oracle::w1_config_bruteforce(x, y)));
  }
  r.row(0, "w1_config_bruteforce_max_gap", brute_gap);
  r.check("w1_config = permutation brute force (N <= 7)", brute_gap <= 1e-9, "max gap " + fmt(brute_gap));

  double first_marginal = 0.0;
  std::size_t violations = 0;
  double worst_ratio = 0.0, worst_w1_ratio = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t alphabet = 2 + t % 2;
    const std::size_t n = 3 + (t / 2) % (alphabet == 2 ? 8 : 6);
    const std::size_t j = std::min<std::size_t>(n, 2 + t % 3);
    const auto g = t % 10 == 9 ? chaos::SymmetricPmf::product({0.2 + uniform01(rng), 0.2 + uniform01(rng)}, n)
                               : chaos::SymmetricPmf::random(alphabet, n, rng);
    const auto res = chaos::grunbaum_exact(g, j);
    if (!res.holds()) ++violations;
    worst_ratio = std::max(worst_ratio, res.tv / res.bound);
    worst_w1_ratio = std::max(worst_w1_ratio, res.w1 * static_cast<double>(n) / static_cast<double>(j * (j - 1)));
    if (t % 10 == 0) first_marginal = std::max(first_marginal, chaos::grunbaum_exact(g, 1).tv);
  }
  r.row(0, "grunbaum_j1_max_tv", first_marginal);
  r.row(0, "grunbaum_max_tv_over_bound", worst_ratio);
  r.row(0, "grunbaum_max_w1_over_j(j-1)/N", worst_w1_ratio, 0.0, "inequality direction only");
  r.check("Grunbaum j = 1 marginals equal", first_marginal <= 1e-12, "max tv " + fmt(first_marginal));
  r.check("Grunbaum tv <= 2 j (j-1) / N on 200 pmfs", violations == 0, std::to_string(violations) + " violations");
  return r;
}

Result kernel_oracles(const Config& c) {
  Result r;
  auto rng = make_rng(c.seed, 2);

  const sobolev::HsKernel phi1(1.0);
  double worst = 0.0;
  for (int i = -2000; i <= 2000; ++i) {
    const double z = 0.01 * i;
    worst = std::max(worst, std::abs(phi1.radial(std::abs(z)) - std::numbers::pi * std::exp(-std::abs(z))));
  }
  r.row(0, "phi1_max_error", worst);
  r.check("Phi_1(z) = pi exp(-|z|) on |z| <= 20", worst <= 1e-6, "max error " + fmt(worst));

  double fourier_rel = 0.0;
  for (const auto& [s, dim] : std::vector<std::pair<double, std::size_t>>{{2.0, 1}, {1.5, 1}, {3.0, 3}}) {
    const sobolev::HsKernel kernel(s, dim);
    for (double rr : {0.0, 0.3, 1.0, 2.5, 6.0}) {
      const double a = kernel.radial(rr), b = oracle::phi_fourier(s, dim, rr);
      fourier_rel = std::max(fourier_rel, std::abs(a - b) / std::abs(b));
    }
  }
  r.row(0, "phi_fourier_max_rel_error", fourier_rel);
  r.check("Phi_s table = Fourier integral (d = 1, 3)", fourier_rel <= 1e-6, "max rel " + fmt(fourier_rel));

  const double s = s_or(c, 2.0);
  const sobolev::HsKernel kernel(s);
  double hs_rel = 0.0;
  std::size_t hs_fail = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + static_cast<std::size_t>(uniform01(rng) * 46.0);
    const std::size_t m = 5 + static_cast<std::size_t>(uniform01(rng) * 46.0);
    const auto mu = gaussian_empirical(rng, n, 0.0), nu = gaussian_empirical(rng, m, 0.3 * (t % 5));
    const double a = sobolev::hs_dist_sq(mu, nu, kernel);
    const auto b = oracle::hs_dist_sq_fourier(mu, nu, s);
    const double err = std::abs(a - b.value);
    hs_rel = std::max(hs_rel, err / b.value);
    if (err > 1e-4 * b.value + b.tail_bound) ++hs_fail;
  }
  r.row(0, "hs_dist_sq_max_rel_error", hs_rel, 0.0, "s=" + fmt(s));
  r.check("hs_dist_sq = Fourier quadrature on 50 pairs", hs_fail == 0,
          std::to_string(hs_fail) + " failures, max rel " + fmt(hs_rel));

  const double k = c.k;
  std::size_t order_fail = 0, interp_fail = 0;
  double worst_interp = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto mu = random_line_measure(rng, 2 + t % 29, 3.0), nu = random_line_measure(rng, 2 + (t * 7) % 29, 3.0);
    const double w1 = transport::w1_line_unbounded(mu, nu), w2 = transport::w2_line(mu, nu);
    double mk = 0.0;
    for (std::size_t a = 0; a < mu.size(); ++a) mk += mu.weight(a) * std::pow(std::abs(mu.point(a)[0]), k);
    for (std::size_t a = 0; a < nu.size(); ++a) mk += nu.weight(a) * std::pow(std::abs(nu.point(a)[0]), k);
    const double rhs = std::pow(2.0, 1.5) * std::pow(mk, 1.0 / k) * std::pow(w1, 0.5 - 1.0 / k);
    if (w1 > w2 * (1.0 + 1e-12) + 1e-15) ++order_fail;
    if (w2 > rhs * (1.0 + 1e-12) + 1e-15) ++interp_fail;
    worst_interp = std::max(worst_interp, w2 / rhs);
  }
  r.row(0, "w2_over_interpolation_bound_max", worst_interp, 0.0, "k=" + fmt(k));
  r.check("W1 <= W2 on 500 pairs", order_fail == 0, std::to_string(order_fail) + " violations");
  r.check("W2 <= 2^{3/2} M_k^{1/k} W1^{1/2-1/k} on 500 pairs", interp_fail == 0,
          std::to_string(interp_fail) + " violations");

  std::size_t bridge_fail = 0;
  for (int t = 0; t < 40; ++t) {
    const auto mu = gaussian_empirical(rng, 10 + t, 0.0), nu = gaussian_empirical(rng, 12 + t, 0.1 * (t % 7));
    if (!sobolev::hs_w1_bridge_check(mu, nu, k, 2.0).holds()) ++bridge_fail;
  }
  r.row(0, "hs_w1_bridge_violations", static_cast<double>(bridge_fail), 0.0, "40 pairs, s=2");
  return r;
}

Result poincare_rate(const Config& c) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  std::size_t l1_fail = 0;
  for (int n = 8; n <= 256; ++n) {
    const double l1 = kac::sigma_gaussian_l1(static_cast<std::size_t>(n), 1);
    const double bound = 8.0 / (n - 4);
    if (l1 > bound) ++l1_fail;
    if ((n & (n - 1)) == 0) r.row(n, "sigma_gamma_l1", l1, 0.0, "bound=" + fmt(bound));
  }
  r.check("||sigma^N_1 - gamma||_L1 <= 8/(N-4), N = 8..256", l1_fail == 0, std::to_string(l1_fail) + " violations");

  const auto ns = ns_or(c, powers_of_two(16, 512));
  const std::size_t reps = reps_or(c, 200);
  std::vector<double> radial, radial_se, coupled, coupled_se;
  for (int n : ns) {
    const auto ms = kac::radial_projection_cost(static_cast<std::size_t>(n), reps, split_seed(c.seed, n));
    radial.push_back(ms.mean);
    radial_se.push_back(ms.std_err);
    r.row(n, "radial_projection_bound", ms.mean, ms.std_err, "upper bound on Omega_N(sigma^N;gamma)");
    const auto om = chaos::omega_n(chaos::sigma_sampler(static_cast<std::size_t>(n)), Density::gaussian(),
                                   static_cast<std::size_t>(n), reps, split_seed(c.seed, n));
    coupled.push_back(om.value);
    coupled_se.push_back(om.std_err);
    r.row(n, "omega_N_coupled", om.value, om.std_err, "upper bound");
    if (n >= 6) r.row(n, "omega_2_quadrature", chaos::omega_j_sigma(static_cast<std::size_t>(n), 2).value, 0.0,
                      "bound=" + fmt(5.0 / (n - 5)));
  }
  if (ns.size() >= 4) {
    const auto fit = loglog_fit(ns, radial, radial_se);
    add_fit(r, "radial_projection_bound", fit);
    add_fit(r, "omega_N_coupled", loglog_fit(ns, coupled, coupled_se));
    r.check("radial-projection slope in (-0.65, -0.35)", in_window(fit.fitted_slope, -0.65, -0.35),
            "slope " + fmt(fit.fitted_slope));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.check("runtime <= 3 min", seconds <= 180.0, fmt(seconds) + " s");
  return r;
}

Result clt_rate(const Config& c) {
  Result r;
  const auto ns = ns_or(c, powers_of_two(4, 512));
  struct Base {
    std::string name;
    Density f;
    bool rate_checked;
  };
  std::vector<Base> bases;
  if (c.density.empty()) {
    bases = {{"uniform", pick_density(c, "uniform"), true},
             {"skewed-bimodal", Density::skewed_bimodal(), true},
             {"bimodal", Density::bimodal(), true},
             {"gaussian", Density::gaussian(), false}};
  } else {
    bases = {{c.density, pick_density(c, c.density), c.density != "gaussian"}};
  }
  for (const auto& b : bases) {
    const auto grid = GridDensity::standardized(b.f);
    const auto bounds = clt::char_fn_bounds_check(grid);
    r.row(0, b.name + ":delta", bounds.delta);
    r.row(0, b.name + ":kappa", bounds.kappa);
    const auto run = clt::run_clt(grid, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) r.row(ns[i], b.name + ":sup_error", run.sup_errors[i]);
    if (b.name == "gaussian") {
      const double worst = *std::max_element(run.sup_errors.begin(), run.sup_errors.end());
      r.check("gaussian base sup error <= 1e-5", worst <= 1e-5, "max " + fmt(worst));
      continue;
    }
    if (ns.size() >= 4) {
      add_fit(r, b.name + ":sup_error", run.report);
      if (b.rate_checked)
        r.check(b.name + " sup-error slope in (-0.65, -0.35)", in_window(run.report.fitted_slope, -0.65, -0.35),
                "slope " + fmt(run.report.fitted_slope));
    }
  }
  if (c.density.empty() || c.density == "uniform") {
    const auto grid = GridDensity::standardized(pick_density(c, "uniform"));
    double worst = 0.0;
    for (std::size_t n : {2u, 3u}) {
      const auto freq = clt::iterate_clt(grid, n);
      const auto real = oracle::clt_real_space(grid, n);
      for (std::size_t i = 0; i < grid.n_points(); ++i) worst = std::max(worst, std::abs(freq.value(i) - real.value(i)));
    }
    r.row(0, "real_vs_frequency_max_gap", worst, 0.0, "uniform base, N in {2,3}");
    r.check("real-space = frequency-space convolution (N = 2, 3)", worst <= 1e-6, "max gap " + fmt(worst));
  }
  return r;
}

Result conditioned_products(const Config& c) {
  Result r;
  const auto f = pick_density(c, "bimodal");
  const auto ns = ns_or(c, powers_of_two(32, 1024));
  const auto table = kac::PartitionTable::cached(f, static_cast<std::size_t>(ns.back()), cache_dir(c));
  std::vector<double> l1;
  for (int n : ns) {
    l1.push_back(kac::conditioned_l1(f, static_cast<std::size_t>(n), table));
    r.row(n, "conditioned_l1", l1.back(), 0.0, f.id());
  }
  if (ns.size() >= 4) {
    const auto fit = loglog_fit(ns, l1);
    add_fit(r, "conditioned_l1", fit);
    r.check("||(theta_{N,1} - 1) f||_L1 slope <= -0.4", fit.fitted_slope <= -0.4, "slope " + fmt(fit.fitted_slope));
  }
  const auto gamma = Density::gaussian();
  const auto gtable = kac::PartitionTable::cached(gamma, static_cast<std::size_t>(ns.back()), cache_dir(c));
  double worst = 0.0;
  for (int n : ns) {
    double here = 0.0;
    for (int i = -400; i <= 400; ++i) {
      const double v = 0.01 * i;
      const double exact = kac::sigma_marginal_pdf(static_cast<std::size_t>(n), 1, std::span<const double>(&v, 1)) /
                           gaussian_pdf(v);
      here = std::max(here, std::abs(kac::theta(static_cast<std::size_t>(n), v, gtable) - exact));
    }
    r.row(n, "gaussian_theta_vs_sigma_over_gamma", here);
    worst = std::max(worst, here);
  }
  r.check("f = gamma: theta_{N,1} = sigma^N_1 / gamma", worst <= 1e-3, "max gap " + fmt(worst));
  return r;
}

Result entropy_chaos(const Config& c) {
  Result r;
  const auto f = pick_density(c, "bimodal");
  const auto ns = ns_or(c, powers_of_two(32, 1024));
  const auto table = kac::PartitionTable::cached(f, static_cast<std::size_t>(ns.back()), cache_dir(c));
  r.row(0, "H(f|gamma)", kac::relative_entropy_to_gaussian(f), 0.0, f.id());
  std::vector<double> gaps;
  for (int n : ns) {
    const double signed_gap = kac::entropy_chaos_gap_signed(f, static_cast<std::size_t>(n), table);
    gaps.push_back(std::abs(signed_gap));
    r.row(n, "entropy_gap", gaps.back(), 0.0, "signed=" + fmt(signed_gap));
  }
  if (ns.size() >= 4) {
    const auto fit = loglog_fit(ns, gaps);
    add_fit(r, "entropy_gap", fit);
    r.check("|H(F^N|sigma^N) - H(f|gamma)| slope in (-0.65, -0.35)", in_window(fit.fitted_slope, -0.65, -0.35),
            "slope " + fmt(fit.fitted_slope));
  }
  const auto gamma = Density::gaussian();
  const auto gtable = kac::PartitionTable::cached(gamma, static_cast<std::size_t>(ns.back()), cache_dir(c));
  double worst = 0.0;
  for (int n : ns) {
    const double g = kac::entropy_chaos_gap(gamma, static_cast<std::size_t>(n), gtable);
    r.row(n, "gaussian_entropy_gap", g);
    worst = std::max(worst, g);
  }
  r.check("f = gamma gives a zero gap", worst <= 1e-6, "max " + fmt(worst));
  return r;
}

Result information_suite(const Config& c) {
  Result r;
  auto rng = make_rng(c.seed, 7);
  const auto gamma = Density::gaussian();
  const double hq = info::entropy_quadrature(gamma).value, iq = info::fisher_quadrature(gamma).value;
  r.row(1, "H(gamma)", hq, 0.0, "quadrature");
  r.row(1, "I(gamma)", iq, 0.0, "quadrature");
  r.check("H(gamma) = -1.418939", std::abs(hq - kGaussianEntropy) <= 1e-6, fmt(hq));
  r.check("I(gamma) = 1", std::abs(iq - 1.0) <= 1e-6, fmt(iq));

  double tensor_gap = 0.0;
  const auto bimodal = Density::bimodal();
  for (const auto& [f, g] : std::vector<std::pair<Density, Density>>{{gamma, gamma}, {bimodal, bimodal}, {gamma, bimodal}}) {
    const auto grid = TensorGrid::product({f, g}, 10.0, 1601);
    const double h2 = info::entropy(grid).value;
    const double i2 = info::fisher(grid).value;
    const double h1 = 0.5 * (info::entropy_quadrature(f).value + info::entropy_quadrature(g).value);
    const double i1 = 0.5 * (info::fisher_quadrature(f).value + info::fisher_quadrature(g).value);
    tensor_gap = std::max({tensor_gap, std::abs(h2 - h1), std::abs(i2 - i1)});
    r.row(2, "H_2(f(x)g)", h2, 0.0, f.id() + "(x)" + g.id());
    r.row(2, "I_2(f(x)g)", i2, 0.0, f.id() + "(x)" + g.id());
  }
  for (int t = 0; t < 10; ++t) {
    const auto f = random_line_measure(rng, 3, 2.0);
    const auto f3 = tensor_power(f, 3);
    tensor_gap = std::max(tensor_gap, std::abs(info::entropy(f3).value - info::entropy(f).value));
  }
  r.row(0, "tensorization_max_gap", tensor_gap);
  r.check("tensorization of H and I", tensor_gap <= 1e-6, "max gap " + fmt(tensor_gap));

  std::size_t super_fail = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t i = 1 + t % 2, j = 1 + (t / 2) % 2, alphabet = 2 + (t / 4) % 2;
    const auto p = chaos::SymmetricPmf::random(alphabet, i + j, rng);
    std::vector<double> letters(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a) letters[a] = static_cast<double>(a);
    if (!info::superadditivity_check(pmf_measure(p, letters), i, j).holds()) ++super_fail;
  }
  r.row(0, "superadditivity_violations", static_cast<double>(super_fail), 0.0, "1000 pmfs");
  r.check("H superadditive on 1000 symmetric pmfs", super_fail == 0, std::to_string(super_fail) + " violations");

  {
    const auto g1 = Density::gaussian(-1.0, 0.8), g2 = Density::gaussian(1.0, 0.6);
    const auto grid = TensorGrid::sample(2, 10.0, 801, [&](std::span<const double> v) {
      return 0.5 * (g1.pdf(v[0]) * g2.pdf(v[1]) + g2.pdf(v[0]) * g1.pdf(v[1]));
    });
    const auto fs = info::fisher_superadditivity_check(grid);
    r.row(2, "fisher_superadditivity_lhs", fs.lhs);
    r.row(2, "fisher_superadditivity_rhs", fs.rhs);
    r.check("I superadditive on a symmetric two-variable density", fs.holds(1e-6));
  }

  std::size_t hwi_fail = 0;
  double hwi_worst = -1e300;
  for (int t = 0; t < 50; ++t) {
    const auto f = Density::gaussian(4.0 * uniform01(rng) - 2.0, 0.3 + 2.7 * uniform01(rng));
    const auto g = Density::gaussian(4.0 * uniform01(rng) - 2.0, 0.3 + 2.7 * uniform01(rng));
    const auto h = info::hwi_check(f, g);
    if (!h.holds()) ++hwi_fail;
    hwi_worst = std::max(hwi_worst, h.lhs - h.rhs);
  }
  r.row(0, "hwi_max_lhs_minus_rhs", hwi_worst, 0.0, "C_E=1");
  r.check("HWI on 50 Gaussian pairs", hwi_fail == 0, std::to_string(hwi_fail) + " violations");

  std::vector<double> samples(100000);
  auto krng = make_rng(c.seed, 77);
  for (auto& x : samples) x = standard_normal(krng);
  const auto knn = info::entropy_knn(samples);
  r.row(100000, "knn_entropy_gamma", knn.value, knn.std_err);
  r.check("k-NN entropy of 1e5 gamma samples within 0.05", std::abs(knn.value - kGaussianEntropy) <= 0.05,
          fmt(knn.value));
  return r;
}

Result omega1_counterexample(const Config& c) {
  Result r;
  const auto ns = ns_or(c, powers_of_two(32, 512));
  const std::size_t reps = reps_or(c, 40000);
  const auto g = Density::gaussian(), h = Density::gaussian(2.0, 1.0);
  bool all1 = true, all2 = true;
  for (int n : ns) {
    const auto rep = chaos::omega1_counterexample(g, h, static_cast<std::size_t>(n), reps, 1000, split_seed(c.seed, n));
    r.row(n, "omega_1", rep.omega1.value, rep.omega1.std_err, "M=" + std::to_string(rep.omega1.reference_size));
    r.row(n, "omega_2", rep.omega2.value, rep.omega2.std_err, "reps=" + std::to_string(rep.omega2.mc_reps));
    all1 = all1 && rep.omega1.value <= 0.02;
    all2 = all2 && rep.omega2.value >= 0.05;
    if (n == 256) r.check("Omega_2 > 5 Omega_1 at N = 256", rep.separated());
  }
  r.row(0, "reference", 0.0, 0.0, "f = (g + h) / 2");
  r.check("Omega_1 <= 0.02 for all N", all1);
  r.check("Omega_2 >= 0.05 for all N", all2);
  return r;
}

Result mixtures_suite(const Config& c) {
  Result r;
  using mix::Mixture;
  const Mixture shifted({{0.5, Density::gaussian(1.0, 1.0)}, {0.5, Density::gaussian(-1.0, 1.0)}});
  const Mixture other({{0.3, Density::gaussian(0.0, 2.0)}, {0.7, Density::gaussian(3.0, 0.5)}});
  const double theta = 0.37;
  const double combined = mix::level3_entropy(Mixture::combine(theta, shifted, other));
  const double affine = theta * mix::level3_entropy(shifted) + (1.0 - theta) * mix::level3_entropy(other);
  r.row(0, "level3_entropy_affinity_gap", std::abs(combined - affine));
  r.check("level-3 entropy is affine", std::abs(combined - affine) <= 1e-12, fmt(std::abs(combined - affine)));
  r.row(0, "level3_entropy(shifted pair)", mix::level3_entropy(shifted));
  r.row(0, "level3_fisher(shifted pair)", mix::level3_fisher(shifted));

  {
    const auto pi1 = mix::mixture_marginal(shifted, 1, 10.0, 2001);
    const auto pi2 = mix::mixture_marginal(shifted, 2, 10.0, 801);
    const double i1 = info::fisher(pi1).value, i2 = info::fisher(pi2).value, i3 = mix::level3_fisher(shifted);
    r.row(1, "I(pi_1)", i1);
    r.row(2, "I(pi_2)", i2);
    r.check("I(pi_1) <= I(pi_2) <= level-3 Fisher", i1 <= i2 + 1e-6 && i2 <= i3 + 1e-6,
            fmt(i1) + " " + fmt(i2) + " " + fmt(i3));
  }

  const Mixture separated({{0.5, Density::gaussian(4.0, 1.0)}, {0.5, Density::gaussian(-4.0, 1.0)}});
  const auto js = ns_or(c, powers_of_two(1, 64));
  const auto curve = mix::marginal_entropy_curve(separated, js, reps_or(c, 200000), split_seed(c.seed, 9));
  for (std::size_t t = 0; t < js.size(); ++t) {
    r.row(js[t], "H(pi_j)", curve.values[t], curve.stderrs[t]);
    r.row(js[t], "level3_gap", curve.gaps[t], curve.stderrs[t], "log2/j=" + fmt(std::log(2.0) / js[t]));
  }
  r.row(0, "level3_entropy(separated pair)", curve.level3);
  r.check("H(pi_j) nondecreasing within 3 stderr", curve.monotone);
  r.check("H(pi_j) <= level-3 entropy", curve.below_level3);
  if (!curve.gap_fit.ns.empty()) {
    add_fit(r, "level3_gap", curve.gap_fit);
    r.check("gap exponent in (-1.2, -0.8)", in_window(curve.gap_fit.fitted_slope, -1.2, -0.8),
            "slope " + fmt(curve.gap_fit.fitted_slope));
  } else {
    r.check("gap exponent in (-1.2, -0.8)", false, "too few positive gaps to fit");
  }

  const double s = s_or(c, 1.0);
  const auto ns = powers_of_two(8, 512);
  const auto probe = mix::definetti_cauchy_probe(shifted, ns, s, 200, split_seed(c.seed, 10));
  for (std::size_t t = 0; t < ns.size(); ++t) {
    r.row(ns[t], "cauchy_sq_distance", probe.report.values[t], probe.report.stderrs[t],
          "exact=" + fmt(probe.exact[t]) + " bound=" + fmt(probe.bound[t]));
  }
  add_fit(r, "cauchy_sq_distance", probe.report);
  r.check("Cauchy probe slope in (-1.1, -0.9)", in_window(probe.report.fitted_slope, -1.1, -0.9),
          "slope " + fmt(probe.report.fitted_slope));
  r.check("bound 2 Phi_s(0) / N never violated", probe.violations == 0, std::to_string(probe.violations));
  return r;
}

}  // namespace chaoslab::exp

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "chaoslab/density.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab::kac {

/// A point of Kac's sphere {V in R^N : |V|^2 = N}, N >= 5.
class SphereConfig {
 public:
  explicit SphereConfig(std::vector<double> coords);

  std::size_t n() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// log |S^{k-1}| = log(2 pi^{k/2} / Gamma(k/2)), the area of the unit sphere in R^k.
double log_sphere_area(double k);

/// i.i.d. draws of sigma^N: a standard Gaussian vector rescaled to radius sqrt(N).
std::vector<SphereConfig> sample_sigma(std::size_t n, std::size_t count, Rng& rng);

/// Exact density of the ell-marginal of sigma^N:
///   (1 - |V|^2/N)_+^{(N-ell-2)/2} |S^{N-ell-1}| / (N^{ell/2} |S^{N-1}|).
double sigma_marginal_pdf(std::size_t n, std::size_t ell, std::span<const double> v);
double sigma_marginal_log_pdf(std::size_t n, std::size_t ell, std::span<const double> v);
/// Radial profile of sigma^N_ell, as a function of r = |V|.
double sigma_marginal_radial(std::size_t n, std::size_t ell, double r);

/// ||sigma^N_ell - gamma^{(x)ell}||_{L^1} by quadrature, ell in {1, 2}.
double sigma_gaussian_l1(std::size_t n, std::size_t ell);

/// E[(1/N) sum_i min(|P(V)_i - V_i|, 1)] over V ~ gamma^{(x)N}, P(V) = sqrt(N) V / |V|.
/// The radial projection couples gamma^{(x)N} with sigma^N, so this bounds W1(sigma^N, gamma^{(x)N}).
MeanStderr radial_projection_cost(std::size_t n, std::size_t reps, std::uint64_t seed);

/// $CHAOSLAB_CACHE_DIR when set, else ".chaoslab-cache" under the working directory.
std::filesystem::path default_cache_dir();

struct PartitionGrid {
  std::size_t points = 1u << 16;  // nodes u_i = i * du on [0, upper]
  double upper = 0.0;             // 0 selects max(2 N_max, N_max + 16 Sigma sqrt(N_max) + 64)
  double band = 1e-13;            // values below band * peak are not stored
};

/// Tables of h^{*k}, k <= max_N, where h is the law of v^2 under f, and the derived
/// partition functions Z'_k(r) = h^{*k}(r^2) Gamma(k/2) 2^{k/2} / alpha_k(r^2),
/// alpha_k(s) = s^{k/2 - 1} e^{-s/2}. Immutable once built.
class PartitionTable {
 public:
  static PartitionTable build(const Density& f, std::size_t max_n, PartitionGrid grid = {});

  void save(const std::filesystem::path& path) const;
  static PartitionTable load(const std::filesystem::path& path);
  /// Loads from `dir` when a file for (f, max_N, grid) is there, else builds and stores it.
  static PartitionTable cached(const Density& f, std::size_t max_n, const std::filesystem::path& dir,
                               PartitionGrid grid = {});
  static std::string cache_name(const std::string& density_id, std::size_t max_n, const PartitionGrid& grid);

  const std::string& density_id() const noexcept { return id_; }
  std::size_t max_n() const noexcept { return max_n_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return du_; }
  double second_moment() const noexcept { return e_; }  // E = int v^2 f
  double sigma() const noexcept { return sigma_; }      // Sigma^2 = int (v^2 - E)^2 f

  /// log h^{*k}(u); -infinity outside the stored band.
  double log_h(std::size_t k, double u) const;
  /// log of the largest tabulated value of h^{*k}.
  double log_h_peak(std::size_t k) const;
  double log_zprime(std::size_t k, double r) const;
  double zprime(std::size_t k, double r) const;

 private:
  struct Band {
    std::size_t offset = 0;      // index of the first stored node
    double log_peak = 0.0;       // values are stored relative to this
    std::vector<float> values;   // log h^{*k}(u_{offset + i}) - log_peak
  };

  std::string id_;
  std::size_t max_n_ = 0;
  std::size_t points_ = 0;
  double du_ = 0.0;
  double e_ = 1.0;
  double sigma_ = 0.0;
  double band_ = 0.0;
  std::vector<Band> bands_;  // bands_[k - 1]
};

/// theta_{N,ell}(V) = (2 pi)^{ell/2} e^{|V|^2/2} Z'_{N-ell}(sqrt(N - |V|^2)) / Z'_N(sqrt N) sigma^N_ell(V);
/// zero when |V|^2 >= N. ell in {1, 2}.
double theta(std::size_t n, std::size_t ell, std::span<const double> v, const PartitionTable& table);
double theta(std::size_t n, double v, const PartitionTable& table);

/// ||F^N_1 - f||_{L^1} = int |theta_{N,1} - 1| f.
double conditioned_l1(const Density& f, std::size_t n, const PartitionTable& table);

struct SamplerStats {
  std::size_t resampled = 0;  // draws restarted after the remaining radius collapsed
};

/// Exact sequential sampler of the conditioned product F^N on Kac's sphere.
std::vector<SphereConfig> sample_conditioned(const Density& f, std::size_t n, std::size_t count,
                                             const PartitionTable& table, Rng& rng, SamplerStats* stats = nullptr);

/// int log(f/gamma) F^N_1 - N^{-1} log Z'_N(sqrt N) - H(f|gamma), i.e. H(F^N|sigma^N) - H(f|gamma).
double entropy_chaos_gap_signed(const Density& f, std::size_t n, const PartitionTable& table);
double entropy_chaos_gap(const Density& f, std::size_t n, const PartitionTable& table);

struct FisherTerms {
  double main;              // int |f'/f + v|^2 f theta_{N,1}
  double correction;        // mean of N^{-2} (V . grad log (f/gamma)^{(x)N})^2 over the samples
  double correction_stderr;
};
FisherTerms fisher_chaos_terms(const Density& f, std::size_t n, const PartitionTable& table,
                               std::span<const SphereConfig> samples);

/// Relative entropy and Fisher information of f with respect to gamma, by quadrature.
double relative_entropy_to_gaussian(const Density& f);
double relative_fisher_to_gaussian(const Density& f);

}  // namespace chaoslab::kac

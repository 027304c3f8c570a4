#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "chaoslab/error.hpp"
#include "chaoslab/fourier.hpp"
#include "chaoslab/kacsphere.hpp"

namespace chaoslab::kac {

namespace {

constexpr char kMagic[8] = {'C', 'H', 'L', 'P', 'T', 'B', 'L', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) fail(ErrorCode::io_error, "partition cache file is truncated");
  return value;
}

void check_hypotheses(const Density& f) {
  std::ostringstream failed;
  const double mean = f.mean(), var = f.variance();
  if (std::abs(mean) > 1e-8) failed << " mean " << mean << " != 0;";
  if (std::abs(var - 1.0) > 1e-6) failed << " variance " << var << " != 1;";
  const double m6 = f.abs_moment(6.0);
  if (!std::isfinite(m6)) failed << " sixth moment is infinite;";
  if (!failed.str().empty()) fail(ErrorCode::hypothesis_failed, "partition table hypotheses fail:" + failed.str());
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("CHAOSLAB_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".chaoslab-cache";
}

// The law of u = v^2 is discretized on the nodes u_i = i du: the exact mass of each cell
// [u_i, u_{i+1}] is split between its two nodes so that the cell's exact mean is kept.
// This equals sampling h * (hat of half-width du), whose transform is sinc^2(t du/2), so the
// k-fold sum is deconvolved by sinc^{2k} in the frequency domain. That is only accurate once
// h^{*k} is smooth at the origin, so k <= 4 keeps the plain lattice convolution.
PartitionTable PartitionTable::build(const Density& f, std::size_t max_n, PartitionGrid grid) {
  require(max_n >= 1, ErrorCode::invalid_argument, "max_N must be positive");
  require(grid.points >= 64 && grid.band > 0.0 && grid.band < 1.0, ErrorCode::invalid_argument,
          "invalid partition grid");
  check_hypotheses(f);

  PartitionTable t;
  t.id_ = f.id();
  t.max_n_ = max_n;
  t.points_ = grid.points;
  t.e_ = f.moment(2);
  t.sigma_ = std::sqrt(std::max(0.0, f.moment(4) - t.e_ * t.e_));
  t.band_ = grid.band;
  const double nmax = static_cast<double>(max_n);
  const double upper = grid.upper > 0.0
                           ? grid.upper
                           : std::max(2.0 * nmax, nmax + 16.0 * t.sigma_ * std::sqrt(nmax) + 64.0);
  const std::size_t n = grid.points;
  t.du_ = upper / static_cast<double>(n);
  const double du = t.du_;

  const std::size_t fft_len = fourier::next_pow2(2 * n);
  const std::size_t spec_len = fft_len / 2 + 1;
  double* real = fftw_alloc_real(fft_len);
  fftw_complex* spec = fftw_alloc_complex(spec_len);
  fftw_plan forward, backward;
  {
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(fft_len), real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(fft_len), spec, real, FFTW_ESTIMATE);
  }

  std::fill(real, real + fft_len, 0.0);
  double prev_root = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) * du;
    const double root = std::sqrt(lo + du);
    const double m0 = f.partial_moment(prev_root, root, 0) + f.partial_moment(-root, -prev_root, 0);
    if (m0 > 0.0) {
      const double m2 = f.partial_moment(prev_root, root, 2) + f.partial_moment(-root, -prev_root, 2);
      const double w = std::clamp((m2 / m0 - lo) / du, 0.0, 1.0);
      real[i] += m0 * (1.0 - w);
      real[i + 1] += m0 * w;
    }
    prev_root = root;
  }
  fftw_execute(forward);

  using cplx = std::complex<double>;
  std::vector<cplx> base(spec_len), raw(spec_len, 1.0), deconv(spec_len, 1.0);
  std::vector<double> sinc2(spec_len);
  for (std::size_t j = 0; j < spec_len; ++j) {
    base[j] = {spec[j][0], spec[j][1]};
    const double x = std::numbers::pi * static_cast<double>(j) / static_cast<double>(fft_len);  // t du / 2
    const double s = j == 0 ? 1.0 : std::sin(x) / x;
    sinc2[j] = s * s;
  }

  t.bands_.resize(max_n);
  std::vector<double> logs(n + 1);
  for (std::size_t k = 1; k <= max_n; ++k) {
    for (std::size_t j = 0; j < spec_len; ++j) {
      raw[j] *= base[j];
      deconv[j] *= base[j] / sinc2[j];
    }
    if (k == 1) {
      // h(u) = (f(sqrt u) + f(-sqrt u)) / (2 sqrt u), singular at 0
      logs[0] = kNegInf;
      for (std::size_t i = 1; i <= n; ++i) {
        const double r = std::sqrt(static_cast<double>(i) * du);
        logs[i] = std::log(f.pdf(r) + f.pdf(-r)) - std::log(2.0 * r);
      }
    } else {
      const auto& src = k <= 4 ? raw : deconv;
      for (std::size_t j = 0; j < spec_len; ++j) {
        spec[j][0] = src[j].real();
        spec[j][1] = src[j].imag();
      }
      fftw_execute(backward);
      double mass = 0.0;
      for (std::size_t i = 0; i <= n; ++i) mass += real[i];
      for (std::size_t i = 0; i <= n; ++i)
        logs[i] = real[i] > 0.0 ? std::log(real[i] / (mass * du)) : kNegInf;
    }
    const double log_peak = *std::max_element(logs.begin(), logs.end());
    const double cut = log_peak + std::log(grid.band);
    std::size_t first = 0, last = n;
    while (first < n && !(logs[first] >= cut)) ++first;
    while (last > first && !(logs[last] >= cut)) --last;
    Band& b = t.bands_[k - 1];
    b.offset = first;
    b.log_peak = log_peak;
    b.values.resize(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
      const double rel = logs[i] - log_peak;
      b.values[i - first] = std::isfinite(rel) ? static_cast<float>(rel) : -std::numeric_limits<float>::infinity();
    }
  }

  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  fftw_free(real);
  fftw_free(spec);
  return t;
}

double PartitionTable::log_h(std::size_t k, double u) const {
  require(k >= 1 && k <= max_n_, ErrorCode::invalid_argument, "convolution power outside the table");
  if (!(u >= 0.0)) return kNegInf;
  const Band& b = bands_[k - 1];
  const double pos = u / du_ - static_cast<double>(b.offset);
  if (pos < 0.0 || pos > static_cast<double>(b.values.size() - 1)) return kNegInf;
  const auto i = std::min(static_cast<std::size_t>(pos), b.values.size() - 1);
  const double w = pos - static_cast<double>(i);
  const double left = b.values[i];
  if (w == 0.0 || i + 1 >= b.values.size()) return b.log_peak + left;
  const double right = b.values[i + 1];
  if (!std::isfinite(left) || !std::isfinite(right)) return kNegInf;
  return b.log_peak + (1.0 - w) * left + w * right;
}

double PartitionTable::log_h_peak(std::size_t k) const {
  require(k >= 1 && k <= max_n_, ErrorCode::invalid_argument, "convolution power outside the table");
  return bands_[k - 1].log_peak;
}

double PartitionTable::log_zprime(std::size_t k, double r) const {
  const double s = r * r;
  const double kk = static_cast<double>(k);
  const double log_alpha = (0.5 * kk - 1.0) * std::log(s) - 0.5 * s;
  return log_h(k, s) + std::lgamma(0.5 * kk) + 0.5 * kk * std::numbers::ln2 - log_alpha;
}

double PartitionTable::zprime(std::size_t k, double r) const { return std::exp(log_zprime(k, r)); }

// Layout (all little-endian): magic "CHLPTBL1"; u32 version; u32 id length; id bytes;
// u64 max_N; u64 points; f64 du, E, Sigma, band; then for k = 1..max_N:
// u64 offset; u64 count; f64 log_peak; count x f32 values. See docs/partition-cache.md.
void PartitionTable::save(const std::filesystem::path& path) const {
  static_assert(std::endian::native == std::endian::little, "the cache format is little-endian");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_error, "cannot write partition cache " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(id_.size()));
  out.write(id_.data(), static_cast<std::streamsize>(id_.size()));
  put(out, static_cast<std::uint64_t>(max_n_));
  put(out, static_cast<std::uint64_t>(points_));
  put(out, du_);
  put(out, e_);
  put(out, sigma_);
  put(out, band_);
  for (const Band& b : bands_) {
    put(out, static_cast<std::uint64_t>(b.offset));
    put(out, static_cast<std::uint64_t>(b.values.size()));
    put(out, b.log_peak);
    out.write(reinterpret_cast<const char*>(b.values.data()),
              static_cast<std::streamsize>(b.values.size() * sizeof(float)));
  }
  if (!out) fail(ErrorCode::io_error, "failed writing partition cache " + path.string());
}

PartitionTable PartitionTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open partition cache " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 8, kMagic)) fail(ErrorCode::io_error, "not a partition cache file");
  if (get<std::uint32_t>(in) != kVersion) fail(ErrorCode::io_error, "unsupported partition cache version");
  PartitionTable t;
  t.id_.resize(get<std::uint32_t>(in));
  in.read(t.id_.data(), static_cast<std::streamsize>(t.id_.size()));
  t.max_n_ = get<std::uint64_t>(in);
  t.points_ = get<std::uint64_t>(in);
  t.du_ = get<double>(in);
  t.e_ = get<double>(in);
  t.sigma_ = get<double>(in);
  t.band_ = get<double>(in);
  t.bands_.resize(t.max_n_);
  for (Band& b : t.bands_) {
    b.offset = get<std::uint64_t>(in);
    b.values.resize(get<std::uint64_t>(in));
    b.log_peak = get<double>(in);
    in.read(reinterpret_cast<char*>(b.values.data()), static_cast<std::streamsize>(b.values.size() * sizeof(float)));
    if (!in) fail(ErrorCode::io_error, "partition cache file is truncated");
  }
  return t;
}

std::string PartitionTable::cache_name(const std::string& density_id, std::size_t max_n, const PartitionGrid& grid) {
  std::string id;
  for (char c : density_id) id += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  std::ostringstream name;
  name << id << "_N" << max_n << "_M" << grid.points << "_U" << grid.upper << "_b" << grid.band << ".cptbl";
  return name.str();
}

PartitionTable PartitionTable::cached(const Density& f, std::size_t max_n, const std::filesystem::path& dir,
                                      PartitionGrid grid) {
  const auto path = dir / cache_name(f.id(), max_n, grid);
  if (std::filesystem::exists(path)) {
    auto t = load(path);
    if (t.id_ == f.id() && t.max_n_ == max_n && t.points_ == grid.points) return t;
  }
  auto t = build(f, max_n, grid);
  std::filesystem::create_directories(dir);
  const auto tmp = path.string() + ".tmp";
  t.save(tmp);
  std::filesystem::rename(tmp, path);
  return t;
}

}  // namespace chaoslab::kac

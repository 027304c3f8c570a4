#include "chaoslab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "chaoslab/error.hpp"

namespace chaoslab::fourier {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<cplx>& data, bool inverse) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<cplx> dft(std::span<const cplx> x, bool inverse) {
  std::vector<cplx> out(x.begin(), x.end());
  if (!out.empty()) transform(out, inverse);
  return out;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::invalid_argument, "convolution of an empty sequence");
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t p = next_pow2(len);
  std::vector<cplx> fa(p), fb(p);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  transform(fa, false);
  transform(fb, false);
  for (std::size_t i = 0; i < p; ++i) fa[i] *= fb[i];
  transform(fa, true);
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = fa[i].real() / static_cast<double>(p);
  return out;
}

std::vector<cplx> centered_chirp(std::span<const cplx> x, double beta) {
  const std::size_t m = x.size();
  require(m > 0, ErrorCode::invalid_argument, "chirp transform of an empty sequence");
  const double c = 0.5 * static_cast<double>(m);
  // (k-c)(n-c) = ((k-c)^2 + (n-c)^2 - (k-n)^2) / 2
  const auto chirp = [beta](double t) { return std::polar(1.0, -0.5 * beta * t * t); };
  const std::size_t p = next_pow2(2 * m - 1);
  std::vector<cplx> a(p), b(p);
  for (std::size_t n = 0; n < m; ++n) a[n] = x[n] * chirp(static_cast<double>(n) - c);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx w = std::conj(chirp(static_cast<double>(j)));
    b[j] = w;
    if (j > 0) b[p - j] = w;
  }
  transform(a, false);
  transform(b, false);
  for (std::size_t i = 0; i < p; ++i) a[i] *= b[i];
  transform(a, true);
  std::vector<cplx> y(m);
  for (std::size_t k = 0; k < m; ++k) y[k] = chirp(static_cast<double>(k) - c) * a[k] / static_cast<double>(p);
  return y;
}

}  // namespace chaoslab::fourier

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace chaoslab::fourier {

using cplx = std::complex<double>;

/// Unnormalized DFT  X_k = sum_n x_n e^{-+2 pi i k n / M}; `inverse` flips the sign.
std::vector<cplx> dft(std::span<const cplx> x, bool inverse = false);

/// Linear convolution of two real sequences (length |a| + |b| - 1), by zero-padded FFT.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Centered chirp transform  Y_k = sum_n x_n exp(-i beta (k - c)(n - c)),  c = M/2,
/// k = 0..M-1, evaluated in O(M log M) by Bluestein's algorithm.
std::vector<cplx> centered_chirp(std::span<const cplx> x, double beta);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace chaoslab::fourier

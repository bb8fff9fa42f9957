#pragma once

#include <complex>
#include <vector>

namespace magweyl::fft {

using cplx = std::complex<double>;

// In-place unnormalized DFT over a row-major multi-dimensional array,
// FFTW sign conventions (sign = -1: sum e^{-2 pi i jk/M}). Plans are cached
// per shape and created with FFTW_ESTIMATE so results are reproducible.
void dft(cplx* data, const std::vector<int>& dims, int sign);

inline void dft_1d(cplx* data, int n, int sign) { dft(data, {n}, sign); }

}  // namespace magweyl::fft

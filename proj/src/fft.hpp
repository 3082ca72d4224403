#pragma once

#include <complex>
#include <vector>

namespace imlab::spectral::detail {

enum class Direction { forward, backward };

/// Unnormalized in-place DFT of an n^dim row-major array. Plans are cached
/// per (dim, n, direction) and created with FFTW_ESTIMATE, so results are
/// deterministic and execution is safe from concurrent threads.
void fft_inplace(std::vector<std::complex<double>>& data, int dim, int n, Direction dir);

}  // namespace imlab::spectral::detail

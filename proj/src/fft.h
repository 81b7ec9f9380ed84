#pragma once

#include <complex>
#include <vector>

namespace mftk::detail {

// Unnormalised forward (e^{-2 pi i jk/n}) or backward (e^{+2 pi i jk/n})
// complex DFT, backed by FFTW.
std::vector<std::complex<double>> dft(std::vector<std::complex<double>> data, bool backward);

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace mftk::detail

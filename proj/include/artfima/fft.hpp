#pragma once

#include <complex>
#include <span>
#include <vector>

namespace artfima {

// Real-to-complex DFT, bins 0..n/2. FFTW under the hood; plan creation is
// serialized internally, execution is concurrent-safe.
std::vector<std::complex<double>> rfft(std::span<const double> x);

// Full linear convolution, length |a| + |b| - 1.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

}  // namespace artfima

#pragma once
//
// Periodograms and the tempered power transfer function.
//

#include <cstddef>
#include <span>
#include <vector>

#include "artfima/kernel.hpp"
#include "artfima/types.hpp"

namespace artfima {

enum class PgramNorm { self_normalized, alpha_scaled };

struct Periodogram {
  // Fourier frequencies 2*pi*j/n for j = 1..floor(n/2); omega = 0 excluded,
  // pi present iff n is even.
  std::vector<double> freqs;
  std::vector<double> ordinates;
  PgramNorm normalization = PgramNorm::self_normalized;
  double alpha = 2.0;       // only meaningful for alpha_scaled
  std::size_t n = 0;        // underlying series length
  double dc_ordinate = 0;   // ordinate at omega = 0, kept for Parseval checks
};

// I~(w_j) = |sum_t x_t e^{-i t w_j}|^2 / sum_t x_t^2, via FFT.
Periodogram self_normalized_periodogram(const SeriesData& series);

// n^{-2/alpha} |DFT|^2; alpha = 2 recovers the classical periodogram.
Periodogram alpha_scaled_periodogram(const SeriesData& series, double alpha);

// g(w, beta) = |Theta(e^{-iw})|^2 / |Phi(e^{-iw})|^2 * (1 - 2 e^{-lambda} cos w + e^{-2 lambda})^{-d}
std::vector<double> transfer_function(const ArtfimaParams& params, std::span<const double> omegas);
double transfer_function_at(const ArtfimaParams& params, double omega);

}  // namespace artfima

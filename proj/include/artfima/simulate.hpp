#pragma once
//
// ARTFIMA path generation by truncated MA(infinity) filtering,
//   X(t) = sum_{j=0}^{M} a_{-d,lambda}(j) Z(t-j),
// with M = truncation_length(order, tol) warm-up innovations drawn before
// t = 1 so the path needs no burn-in.
//

#include <cstdint>
#include <span>
#include <vector>

#include "artfima/kernel.hpp"
#include "artfima/stable.hpp"
#include "artfima/types.hpp"

namespace artfima {

struct SimulationResult {
  SeriesData series;                 // X(1..n)
  std::vector<double> innovations;   // Z(1-M .. n), length n + M
  std::size_t filter_length = 0;     // M
};

// Switches to FFT convolution above this many multiply-adds.
inline constexpr std::size_t kFftConvolutionThreshold = 10'000'000;

SimulationResult simulate_artfima_detailed(const ArtfimaParams& params, const StableSpec& spec,
                                           std::size_t n, std::uint64_t seed, double tol = 1e-12,
                                           std::uint64_t stream = 0);

SeriesData simulate_artfima(const ArtfimaParams& params, const StableSpec& spec, std::size_t n,
                            std::uint64_t seed, double tol = 1e-12, std::uint64_t stream = 0);

// Running sample variance V_k of x(1..k), divisor k-1; V_1 = 0. A diagnostic
// for infinite-variance inputs: V_k fails to stabilize when alpha < 2.
std::vector<double> cumulative_variance(std::span<const double> x);

}  // namespace artfima

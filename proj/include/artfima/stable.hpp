#pragma once
//
// Symmetric alpha-stable sampling via the Chambers-Mallows-Stuck transform.
//

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "artfima/types.hpp"

namespace artfima {

struct StableSpec {
  double alpha = 2.0;  // stability index, (0, 2]
  double sigma = 1.0;  // scale, > 0; alpha = 2 gives N(0, 2 sigma^2)

  void validate() const;
};

// Deterministic substream keyed by (seed, stream). Consumers that must not
// share draws (Monte Carlo replicates, multistart ARMA draws) take distinct
// stream ids under one user-facing seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Open interval (0, 1); never returns an endpoint.
  double uniform01();

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// n i.i.d. SaS(alpha, sigma) draws. Two uniforms are consumed per draw.
std::vector<double> sample_sas(const StableSpec& spec, std::size_t n, Rng& rng);

// Convenience wrapper that records provenance meta.
SeriesData sample_sas_series(const StableSpec& spec, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream = 0);

// Re(1/n sum_t e^{i theta x_t}) = mean of cos(theta * x_t), one value per theta.
std::vector<double> empirical_cf(std::span<const double> x, std::span<const double> thetas);

}  // namespace artfima

#pragma once
//
// Monte Carlo bias/MSE study of the Whittle estimator. Replicate r simulates
// with RNG stream r and fits with the shared SearchConfig; replicates run in
// parallel and aggregation is order-independent.
//

#include <cstdint>
#include <string>
#include <vector>

#include "artfima/estimate.hpp"
#include "artfima/kernel.hpp"
#include "artfima/stable.hpp"

namespace artfima {

struct McConfig {
  ArtfimaParams true_params;
  StableSpec innovation;
  std::size_t n = 4096;        // full-scale reference: 10000
  std::size_t replicates = 200;  // full-scale reference: 1000
  std::uint64_t seed = 42;
  double sim_tol = 1e-12;
  SearchConfig search;         // p, q taken from here; box as configured
  int threads = 0;             // 0 = auto (hardware, capped by ARTFIMA_THREADS)
  bool shared_stream = false;  // degenerate-study mode: every replicate reuses stream 0

  void validate() const;
};

struct ParamStats {
  std::string name;        // "phi1", "d", "lambda", "theta1", ...
  double true_value = 0;
  double mean = 0;
  double bias = 0;
  double mse = 0;          // population divisor R, so mse = bias^2 + var exactly
  double ci_lo = 0;        // empirical 2.5% percentile of the R estimates
  double ci_hi = 0;        // empirical 97.5% percentile
};

struct McReport {
  std::vector<ParamStats> stats;
  std::vector<std::vector<double>> estimates;  // one row per successful replicate
  std::vector<std::size_t> replicate_ids;      // matching row order
  std::size_t requested = 0;
  std::vector<std::size_t> failed;             // replicate ids whose fit failed

  nlohmann::json to_json() const;
};

McReport run_mc_study(const McConfig& config);

// Worker-count resolution: explicit > ARTFIMA_THREADS env cap > hardware.
int resolve_threads(int requested);

}  // namespace artfima

#include "artfima/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "artfima/fft.hpp"

namespace artfima {

SimulationResult simulate_artfima_detailed(const ArtfimaParams& params, const StableSpec& spec,
                                           std::size_t n, std::uint64_t seed, double tol,
                                           std::uint64_t stream) {
  params.validate();
  spec.validate();
  if (n == 0) throw std::invalid_argument("empty-request: n must be >= 1");

  const std::size_t M = truncation_length(params.order, tol);
  const std::vector<double> a = ma_coefficients(params, M + 1);

  Rng rng(seed, stream);
  SimulationResult res;
  res.filter_length = M;
  res.innovations = sample_sas(spec, n + M, rng);

  std::vector<double>& x = res.series.values;
  const std::vector<double>& z = res.innovations;
  if (static_cast<double>(n) * static_cast<double>(M + 1) >
      static_cast<double>(kFftConvolutionThreshold)) {
    std::vector<double> full = fft_convolve(a, z);
    x.assign(full.begin() + static_cast<std::ptrdiff_t>(M),
             full.begin() + static_cast<std::ptrdiff_t>(M + n));
  } else {
    x.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      double s = 0.0;
      for (std::size_t j = 0; j <= M; ++j) s += a[j] * z[M + t - j];
      x[t] = s;
    }
  }

  res.series.meta = {{"source", "simulate_artfima"},
                     {"phi", params.arma.phi},
                     {"d", params.order.d},
                     {"lambda", params.order.lambda},
                     {"theta", params.arma.theta},
                     {"alpha", spec.alpha},
                     {"sigma", spec.sigma},
                     {"n", n},
                     {"seed", seed},
                     {"stream", stream},
                     {"tol", tol},
                     {"filter_length", M}};
  return res;
}

SeriesData simulate_artfima(const ArtfimaParams& params, const StableSpec& spec, std::size_t n,
                            std::uint64_t seed, double tol, std::uint64_t stream) {
  return simulate_artfima_detailed(params, spec, n, seed, tol, stream).series;
}

std::vector<double> cumulative_variance(std::span<const double> x) {
  // Welford running variance with divisor k-1; V_1 = 0.
  std::vector<double> v(x.size(), 0.0);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double delta = x[k] - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (x[k] - mean);
    v[k] = k == 0 ? 0.0 : m2 / static_cast<double>(k);
  }
  return v;
}

}  // namespace artfima

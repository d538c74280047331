#include "artfima/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace artfima {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

void StableSpec::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 2.0)
    throw std::invalid_argument("invalid-stable: alpha must lie in (0, 2]");
  if (!std::isfinite(sigma) || sigma <= 0.0)
    throw std::invalid_argument("invalid-stable: sigma must be positive");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

double Rng::uniform01() {
  // 53-bit mantissa shifted into the open interval: never 0, never 1.
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample_sas(const StableSpec& spec, std::size_t n, Rng& rng) {
  spec.validate();
  std::vector<double> z(n);
  const double alpha = std::abs(spec.alpha - 1.0) < 1e-8 ? 1.0 : spec.alpha;
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double U = pi * (rng.uniform01() - 0.5);  // (-pi/2, pi/2)
    const double W = -std::log(rng.uniform01());    // Exp(1), > 0
    double v;
    if (alpha == 1.0) {
      v = std::tan(U);
    } else {
      v = std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha) *
          std::pow(std::cos((1.0 - alpha) * U) / W, (1.0 - alpha) / alpha);
    }
    z[i] = spec.sigma * v;
  }
  return z;
}

SeriesData sample_sas_series(const StableSpec& spec, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream) {
  Rng rng(seed, stream);
  SeriesData out;
  out.values = sample_sas(spec, n, rng);
  out.meta = {{"source", "sample_sas"},
              {"alpha", spec.alpha},
              {"sigma", spec.sigma},
              {"n", n},
              {"seed", seed},
              {"stream", stream}};
  return out;
}

std::vector<double> empirical_cf(std::span<const double> x, std::span<const double> thetas) {
  if (x.empty()) throw std::invalid_argument("empty-request: empirical_cf needs data");
  std::vector<double> out(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    double s = 0.0;
    for (double v : x) s += std::cos(thetas[k] * v);
    out[k] = s / static_cast<double>(x.size());
  }
  return out;
}

void ensure_finite(const std::vector<double>& x, const std::string& what) {
  for (double v : x)
    if (!std::isfinite(v))
      throw std::invalid_argument("invalid-data: non-finite value in " + what);
}

}  // namespace artfima

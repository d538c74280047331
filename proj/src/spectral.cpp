#include "artfima/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "artfima/fft.hpp"

namespace artfima {

namespace {

Periodogram dft_ordinates(const SeriesData& series) {
  const std::size_t n = series.size();
  if (n < 4) throw std::invalid_argument("invalid-series: periodogram needs length >= 4");
  ensure_finite(series.values, "periodogram input");

  Periodogram pg;
  pg.n = n;
  const auto bins = rfft(series.values);
  const std::size_t half = n / 2;  // pi included iff n even
  pg.freqs.resize(half);
  pg.ordinates.resize(half);
  for (std::size_t j = 1; j <= half; ++j) {
    pg.freqs[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    pg.ordinates[j - 1] = std::norm(bins[j]);
  }
  pg.dc_ordinate = std::norm(bins[0]);
  return pg;
}

}  // namespace

Periodogram self_normalized_periodogram(const SeriesData& series) {
  double ss = 0.0;
  for (double v : series.values) ss += v * v;
  if (ss <= 0.0) throw std::invalid_argument("degenerate-series: sum of squares is zero");
  Periodogram pg = dft_ordinates(series);
  pg.normalization = PgramNorm::self_normalized;
  for (double& v : pg.ordinates) v /= ss;
  pg.dc_ordinate /= ss;
  return pg;
}

Periodogram alpha_scaled_periodogram(const SeriesData& series, double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 2.0)
    throw std::invalid_argument("invalid-stable: alpha must lie in (0, 2]");
  Periodogram pg = dft_ordinates(series);
  pg.normalization = PgramNorm::alpha_scaled;
  pg.alpha = alpha;
  const double scale = std::pow(static_cast<double>(series.size()), -2.0 / alpha);
  for (double& v : pg.ordinates) v *= scale;
  pg.dc_ordinate *= scale;
  return pg;
}

double transfer_function_at(const ArtfimaParams& params, double omega) {
  const double lam = params.order.lambda;
  const double d = params.order.d;
  const double base = 1.0 - 2.0 * std::exp(-lam) * std::cos(omega) + std::exp(-2.0 * lam);

  double arma_ratio = 1.0;
  if (params.arma.p() != 0 || params.arma.q() != 0) {
    const std::complex<double> z(std::cos(omega), -std::sin(omega));
    std::complex<double> th(1.0, 0.0), ph(1.0, 0.0);
    std::complex<double> zk(1.0, 0.0);
    const std::size_t kmax = std::max(params.arma.p(), params.arma.q());
    for (std::size_t k = 1; k <= kmax; ++k) {
      zk *= z;
      if (k <= params.arma.q()) th += params.arma.theta[k - 1] * zk;
      if (k <= params.arma.p()) ph -= params.arma.phi[k - 1] * zk;
    }
    arma_ratio = std::norm(th) / std::norm(ph);
  }

  if (base <= 0.0) {
    // only reachable at lambda = 0, omega = 0 (mod 2 pi)
    if (d > 0.0) throw std::domain_error("singular-spectrum: untempered pole at omega = 0");
    return d == 0.0 ? arma_ratio : 0.0;
  }
  return arma_ratio * std::pow(base, -d);
}

std::vector<double> transfer_function(const ArtfimaParams& params, std::span<const double> omegas) {
  params.order.validate();
  params.arma.validate();
  std::vector<double> out(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = transfer_function_at(params, omegas[i]);
  return out;
}

}  // namespace artfima

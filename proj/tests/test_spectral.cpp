#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "artfima/spectral.hpp"

using namespace artfima;

namespace {

SeriesData make_series(std::vector<double> v) {
  SeriesData s;
  s.values = std::move(v);
  return s;
}

// full-grid Parseval mean: dc + doubled interior (+ pi once when n is even)
double parseval_mean(const Periodogram& pg) {
  double s = pg.dc_ordinate;
  for (double v : pg.ordinates) s += 2.0 * v;
  if (pg.n % 2 == 0) s -= pg.ordinates.back();
  return s / static_cast<double>(pg.n);
}

}  // namespace

TEST_CASE("frequency grid covers (0, pi] with pi only for even n") {
  for (std::size_t n : {8, 9, 127, 128}) {
    std::mt19937_64 eng(n);
    std::vector<double> x(n);
    for (double& v : x) v = std::uniform_real_distribution<double>(-1, 1)(eng);
    const Periodogram pg = self_normalized_periodogram(make_series(x));
    REQUIRE(pg.freqs.size() == n / 2);
    REQUIRE(pg.ordinates.size() == n / 2);
    for (std::size_t j = 0; j < pg.freqs.size(); ++j)
      CHECK(pg.freqs[j] ==
            doctest::Approx(2.0 * std::numbers::pi * double(j + 1) / double(n)).epsilon(1e-14));
    if (n % 2 == 0)
      CHECK(pg.freqs.back() == doctest::Approx(std::numbers::pi));
    else
      CHECK(pg.freqs.back() < std::numbers::pi);
  }
}

TEST_CASE("impulse input gives a flat self-normalized periodogram") {
  std::vector<double> x(64, 0.0);
  x[0] = 5.0;
  const Periodogram pg = self_normalized_periodogram(make_series(x));
  for (double v : pg.ordinates) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pg.dc_ordinate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("self-normalized ordinates are scale invariant") {
  std::mt19937_64 eng(3);
  std::vector<double> x(200), y(200);
  for (std::size_t t = 0; t < x.size(); ++t) {
    x[t] = std::normal_distribution<double>()(eng);
    y[t] = 1e6 * x[t];
  }
  const Periodogram a = self_normalized_periodogram(make_series(x));
  const Periodogram b = self_normalized_periodogram(make_series(y));
  for (std::size_t j = 0; j < a.ordinates.size(); ++j)
    CHECK(a.ordinates[j] == doctest::Approx(b.ordinates[j]).epsilon(1e-12));
}

TEST_CASE("full-grid mean of the self-normalized periodogram is one") {
  std::mt19937_64 eng(11);
  for (std::size_t n : {64, 65, 250, 251}) {
    std::vector<double> x(n);
    for (double& v : x) v = std::cauchy_distribution<double>()(eng);  // heavy tails welcome
    const Periodogram pg = self_normalized_periodogram(make_series(x));
    CAPTURE(n);
    CHECK(parseval_mean(pg) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("alpha-scaled periodogram matches an explicit DFT") {
  const std::size_t n = 48;
  std::mt19937_64 eng(7);
  std::vector<double> x(n);
  for (double& v : x) v = std::uniform_real_distribution<double>(-2, 2)(eng);
  const double alpha = 1.3;
  const Periodogram pg = alpha_scaled_periodogram(make_series(x), alpha);
  CHECK(pg.normalization == PgramNorm::alpha_scaled);
  CHECK(pg.alpha == alpha);

  const double scale = std::pow(double(n), -2.0 / alpha);
  for (std::size_t j = 0; j < pg.freqs.size(); ++j) {
    std::complex<double> dft{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t)
      dft += x[t] * std::exp(std::complex<double>(0.0, -double(t + 1) * pg.freqs[j]));
    CHECK(pg.ordinates[j] == doctest::Approx(scale * std::norm(dft)).epsilon(1e-10));
  }

  // ratio with the self-normalized version is constant across frequencies
  const Periodogram sn = self_normalized_periodogram(make_series(x));
  double ss = 0.0;
  for (double v : x) ss += v * v;
  for (std::size_t j = 0; j < pg.freqs.size(); ++j)
    CHECK(pg.ordinates[j] == doctest::Approx(sn.ordinates[j] * ss * scale).epsilon(1e-10));
}

TEST_CASE("transfer function: white noise, arma factors, and tempering") {
  ArtfimaParams flat;
  flat.order = {0.0, 0.5};
  for (double w : {0.1, 1.0, 3.0}) CHECK(transfer_function_at(flat, w) == doctest::Approx(1.0));

  // at omega = 0 the tempered factor is (1 - e^{-lambda})^{-2d}
  ArtfimaParams p;
  p.order = {0.1, 0.045};
  CHECK(transfer_function_at(p, 0.0) ==
        doctest::Approx(std::pow(1.0 - std::exp(-0.045), -0.2)).epsilon(1e-12));
  CHECK(transfer_function_at(p, 0.0) == doctest::Approx(1.86769).epsilon(1e-5));

  // tiny lambda approaches the untempered |1 - e^{-iw}|^{-2d}
  ArtfimaParams tiny;
  tiny.order = {0.3, 1e-8};
  for (double w : {0.5, 1.0, 2.0, 3.0}) {
    const double untempered = std::pow(std::norm(1.0 - std::exp(std::complex<double>(0, -w))), -0.3);
    CHECK(transfer_function_at(tiny, w) == doctest::Approx(untempered).epsilon(1e-6));
  }

  // evenness in omega
  ArtfimaParams arma;
  arma.order = {0.2, 0.1};
  arma.arma.phi = {0.5};
  arma.arma.theta = {0.3};
  for (double w : {0.3, 1.2, 2.9})
    CHECK(transfer_function_at(arma, w) == doctest::Approx(transfer_function_at(arma, -w)));

  // vector form agrees with pointwise form
  const std::vector<double> grid{0.1, 0.7, 2.2};
  const std::vector<double> g = transfer_function(arma, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(g[i] == doctest::Approx(transfer_function_at(arma, grid[i])));
}

TEST_CASE("transfer function equals the squared MA transfer sum") {
  std::vector<ArtfimaParams> sets(5);
  sets[0].order = {0.1, 0.045};
  sets[1].order = {0.3, 0.1};
  sets[2].order = {0.611, 0.026};
  sets[2].arma.phi = {0.652};
  sets[2].arma.theta = {0.225};
  sets[3].order = {-0.2, 0.3};
  sets[4].order = {0.45, 0.5};
  sets[4].arma.phi = {0.4, -0.2};

  for (const ArtfimaParams& p : sets) {
    const std::size_t m = std::max<std::size_t>(truncation_length(p.order, 1e-14) + 1, 4000);
    const std::vector<double> a = ma_coefficients(p, m);
    for (int k = 1; k <= 64; ++k) {
      const double w = std::numbers::pi * double(k) / 64.0;
      std::complex<double> h{0.0, 0.0};
      for (std::size_t j = 0; j < a.size(); ++j)
        h += a[j] * std::exp(std::complex<double>(0.0, -double(j) * w));
      const double g = transfer_function_at(p, w);
      CHECK(std::abs(std::norm(h) / g - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("spectral edge cases throw typed errors") {
  CHECK_THROWS_WITH_AS(self_normalized_periodogram(make_series(std::vector<double>(32, 0.0))),
                       doctest::Contains("degenerate-series"), std::invalid_argument);
  CHECK_THROWS_AS(self_normalized_periodogram(make_series({})), std::invalid_argument);
  CHECK_THROWS_AS(alpha_scaled_periodogram(make_series({1.0, 2.0, 3.0, 4.0}), 0.0),
                  std::invalid_argument);

  // lambda = 0 with d > 0 has a genuine singularity at omega = 0
  ArtfimaParams sing;
  sing.order.d = 0.3;
  sing.order.lambda = 0.0;
  CHECK_THROWS_WITH_AS(transfer_function_at(sing, 0.0), doctest::Contains("singular-spectrum"),
                       std::domain_error);
  CHECK(transfer_function_at(sing, 1.0) > 0.0);  // fine away from the origin
}

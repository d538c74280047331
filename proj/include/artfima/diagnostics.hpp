#pragma once
//
// Residual extraction and whiteness diagnostics.
//

#include <cstddef>
#include <span>
#include <vector>

#include "artfima/kernel.hpp"
#include "artfima/types.hpp"

namespace artfima {

// Z^(t) = sum_{j=0}^{M} c_{d,lambda}(j) x(t-j) for t = M+1..n, with
// M = truncation_length(order, tol). Output has length n - M.
SeriesData residuals(const SeriesData& series, const ArtfimaParams& params, double tol = 1e-12);

struct AcfResult {
  std::vector<double> values;  // lags 0..max_lag; values[0] = 1 by construction
  double band = 0;             // +-1.96/sqrt(n) white-noise band
  std::size_t n = 0;
};

// Mean-corrected sample autocorrelation.
AcfResult sample_acf(const SeriesData& series, std::size_t max_lag);

// Normalized sample autocovariance sum x_t x_{t+h} / sum x_t^2 without mean
// correction; the heavy-tail analogue used in place of the ACF when alpha < 2.
AcfResult normalized_sample_acvf(const SeriesData& series, std::size_t max_lag);

struct LjungBoxResult {
  double statistic = 0;
  double p_value = 1;
  std::size_t lags = 0;
  std::size_t df = 0;  // lags minus the fitted-parameter adjustment
};

// Q = n(n+2) sum_{k=1}^{H} rho(k)^2/(n-k); p-value from the chi-square upper
// tail with H - fit_df degrees of freedom (regularized incomplete gamma).
// fit_df defaults to 0: no degrees-of-freedom reduction unless requested.
LjungBoxResult ljung_box(const SeriesData& series, std::size_t lags = 20, std::size_t fit_df = 0);

// Same statistic from precomputed autocorrelations rho(1..H).
LjungBoxResult ljung_box_from_acf(std::span<const double> rho, std::size_t n,
                                  std::size_t fit_df = 0);

double chi_square_upper_tail(double x, double dof);

}  // namespace artfima

#include "artfima/diagnostics.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace artfima {

SeriesData residuals(const SeriesData& series, const ArtfimaParams& params, double tol) {
  params.validate();
  ensure_finite(series.values, "residual input");
  const std::size_t n = series.values.size();
  const std::size_t M = truncation_length(params.order, tol);
  if (n <= M)
    throw std::invalid_argument("invalid-series: series shorter than the inverse filter (n <= " +
                                std::to_string(M) + ")");
  const std::vector<double> c = ar_coefficients(params, M + 1);
  SeriesData out;
  out.values.resize(n - M);
  const double* x = series.values.data();
  for (std::size_t t = M; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * x[t - j];
    out.values[t - M] = acc;
  }
  out.meta = series.meta;
  out.meta["residuals"] = {{"d", params.order.d},
                          {"lambda", params.order.lambda},
                          {"phi", params.arma.phi},
                          {"theta", params.arma.theta},
                          {"tol", tol},
                          {"filter_length", M}};
  return out;
}

namespace {

void check_lag(std::size_t max_lag, std::size_t n, std::size_t divisor) {
  if (n < 4) throw std::invalid_argument("invalid-series: need at least 4 observations");
  if (max_lag == 0 || max_lag >= n / divisor)
    throw std::invalid_argument("invalid-lag: max lag must lie in [1, n/" +
                                std::to_string(divisor) + ")");
}

}  // namespace

AcfResult sample_acf(const SeriesData& series, std::size_t max_lag) {
  const std::size_t n = series.values.size();
  check_lag(max_lag, n, 2);
  ensure_finite(series.values, "acf input");
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : series.values) c0 += (v - mean) * (v - mean);
  if (c0 <= 0.0) throw std::runtime_error("degenerate-series: constant input has no acf");

  AcfResult out;
  out.n = n;
  out.band = 1.96 / std::sqrt(static_cast<double>(n));
  out.values.resize(max_lag + 1);
  out.values[0] = 1.0;
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double ch = 0.0;
    for (std::size_t t = 0; t + h < n; ++t)
      ch += (series.values[t] - mean) * (series.values[t + h] - mean);
    out.values[h] = ch / c0;
  }
  return out;
}

AcfResult normalized_sample_acvf(const SeriesData& series, std::size_t max_lag) {
  const std::size_t n = series.values.size();
  check_lag(max_lag, n, 2);
  ensure_finite(series.values, "acvf input");
  double ss = 0.0;
  for (double v : series.values) ss += v * v;
  if (ss <= 0.0) throw std::runtime_error("degenerate-series: zero-energy input");

  AcfResult out;
  out.n = n;
  out.band = 1.96 / std::sqrt(static_cast<double>(n));
  out.values.resize(max_lag + 1);
  out.values[0] = 1.0;
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double ch = 0.0;
    for (std::size_t t = 0; t + h < n; ++t) ch += series.values[t] * series.values[t + h];
    out.values[h] = ch / ss;
  }
  return out;
}

LjungBoxResult ljung_box_from_acf(std::span<const double> rho, std::size_t n,
                                  std::size_t fit_df) {
  if (rho.empty()) throw std::invalid_argument("empty-request: no autocorrelations given");
  if (fit_df >= rho.size())
    throw std::invalid_argument("invalid-config: fitted-parameter adjustment eats all degrees of freedom");
  LjungBoxResult out;
  out.lags = rho.size();
  out.df = rho.size() - fit_df;
  const double nd = static_cast<double>(n);
  double q = 0.0;
  for (std::size_t k = 1; k <= rho.size(); ++k)
    q += rho[k - 1] * rho[k - 1] / (nd - static_cast<double>(k));
  out.statistic = nd * (nd + 2.0) * q;
  out.p_value = chi_square_upper_tail(out.statistic, static_cast<double>(out.df));
  return out;
}

LjungBoxResult ljung_box(const SeriesData& series, std::size_t lags, std::size_t fit_df) {
  check_lag(lags, series.values.size(), 4);
  const AcfResult acf = sample_acf(series, lags);
  return ljung_box_from_acf(std::span<const double>(acf.values).subspan(1), series.values.size(),
                            fit_df);
}

double chi_square_upper_tail(double x, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("invalid-config: chi-square needs dof > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("invalid-data: chi-square statistic must be >= 0");
  if (x == 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

}  // namespace artfima

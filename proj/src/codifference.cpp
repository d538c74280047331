#include "artfima/codifference.hpp"

#include <cmath>
#include <stdexcept>

namespace artfima {

namespace {

// |x|^alpha via exp(alpha ln|x|) with a hard zero-guard.
double pow_abs(double x, double alpha) {
  const double ax = std::abs(x);
  if (ax < 1e-300) return 0.0;
  return std::exp(alpha * std::log(ax));
}

// |a|^alpha + |b|^alpha - |a-b|^alpha without catastrophic cancellation:
// with |b| <= |a| and x = b/a in [-1, 1],
//   term = |b|^alpha - |a|^alpha * expm1(alpha * log1p(-x)).
double codiff_term(double a, double b, double alpha) {
  if (std::abs(b) > std::abs(a)) std::swap(a, b);
  if (std::abs(a) < 1e-300) return 0.0;
  const double x = b / a;
  if (x == 1.0) return pow_abs(b, alpha) + pow_abs(a, alpha);  // a = b, third term 0
  return pow_abs(b, alpha) - pow_abs(a, alpha) * std::expm1(alpha * std::log1p(-x));
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 2.0)
    throw std::invalid_argument("invalid-stable: alpha must lie in (0, 2]");
}

}  // namespace

CodiffCurve theoretical_codifference(const ArtfimaParams& params, double alpha,
                                     std::size_t max_lag, double tol) {
  params.validate();
  check_alpha(alpha);
  const std::size_t base = truncation_length(params.order, tol);
  const std::size_t total = base + max_lag + 1;
  const std::vector<double> a = ma_coefficients(params, total);

  CodiffCurve curve;
  curve.alpha = alpha;
  curve.params = params;
  curve.inner_truncation = total;
  curve.tau.resize(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t j = 0; j + lag < total; ++j) s += codiff_term(a[j], a[j + lag], alpha);
    curve.tau[lag] = s;
  }
  return curve;
}

LimitCandidates limit_candidates(const TemperedOrder& order, double alpha, double tol) {
  TemperedOrder o = order;
  o.validate();
  if (o.lambda <= 0.0) throw std::invalid_argument("invalid-order: lambda must be positive");
  if (o.d <= 0.0)
    throw std::invalid_argument("unsupported-order: the limit laws require d > 0");
  check_alpha(alpha);

  // Both series have terms ~ e^{-lambda alpha j} j^{(d-1)(alpha-1)}; run until
  // the increment falls below tol relative.
  LimitCandidates out;
  const double lam = o.lambda;
  const double d = o.d;
  double w_t = 1.0;  // omega_{-d,lambda}(j)
  double w_u = 1.0;  // omega_{-d}(j), untempered
  double sum_t = 1.0, sum_u = 1.0;
  const double e = std::exp(-lam);
  for (std::size_t j = 1; j < kMaxCoefficients; ++j) {
    const double jd = static_cast<double>(j);
    w_t *= e * (jd - 1.0 + d) / jd;
    w_u *= (jd - 1.0 + d) / jd;
    const double t_term = std::exp(-lam * jd) * pow_abs(w_t, alpha - 1.0) * (w_t < 0 ? -1.0 : 1.0);
    const double u_term = std::exp(-lam * alpha * jd) * pow_abs(w_u, alpha - 1.0) * (w_u < 0 ? -1.0 : 1.0);
    sum_t += t_term;
    sum_u += u_term;
    if (std::abs(t_term) < tol * std::abs(sum_t) && std::abs(u_term) < tol * std::abs(sum_u))
      break;
  }
  out.tempered_form = alpha / std::tgamma(d) * sum_t;
  out.untempered_form = std::pow(std::tgamma(d), -alpha) * alpha * sum_u;
  return out;
}

AsymptoticLaw asymptotic_constant(const ArtfimaParams& params, double alpha) {
  params.validate();
  check_alpha(alpha);
  if (params.arma.p() != 0 || params.arma.q() != 0)
    throw std::invalid_argument("unsupported-model: asymptotics are stated for p = q = 0");
  if (alpha == 1.0)
    throw std::invalid_argument("unsupported-exponent: neither limit theorem covers alpha = 1");
  if (params.order.d <= 0.0)
    throw std::invalid_argument("unsupported-order: the limit laws require d > 0");

  const double d = params.order.d;
  const double lam = params.order.lambda;
  AsymptoticLaw law;
  if (alpha < 1.0) {
    law.rate = "e^(-lambda*alpha*n) * n^(alpha*(d-1))";
    law.constant = std::pow(std::tgamma(d), -alpha) / (1.0 - std::exp(-lam * alpha));
  } else {
    law.rate = "e^(-lambda*n) * n^(d-1)";
    law.constant = limit_candidates(params.order, alpha).tempered_form;
  }
  return law;
}

double codiff_ratio(const CodiffCurve& curve, std::size_t lag) {
  if (lag == 0 || lag >= curve.tau.size())
    throw std::invalid_argument("invalid-lag: ratio needs 1 <= lag <= max_lag");
  const double tau = curve.tau[lag];
  if (tau == 0.0) return 0.0;
  const double d = curve.params.order.d;
  const double lam = curve.params.order.lambda;
  const double nd = static_cast<double>(lag);
  double log_rate;
  if (curve.alpha < 1.0)
    log_rate = -lam * curve.alpha * nd + curve.alpha * (d - 1.0) * std::log(nd);
  else
    log_rate = -lam * nd + (d - 1.0) * std::log(nd);
  // tau / rate in log space; rate underflows well before tau does not matter.
  return (tau < 0 ? -1.0 : 1.0) * std::exp(std::log(std::abs(tau)) - log_rate);
}

std::vector<double> codiff_abs_partial_sums(const CodiffCurve& curve) {
  std::vector<double> s(curve.tau.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < curve.tau.size(); ++i) {
    acc += std::abs(curve.tau[i]);
    s[i] = acc;
  }
  return s;
}

}  // namespace artfima

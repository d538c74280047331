#include "artfima/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "artfima/fft.hpp"

namespace artfima {

namespace {

bool is_negative_integer(double d) { return d < 0.0 && d == std::floor(d); }

void check_count(std::size_t m) {
  if (m == 0) throw std::invalid_argument("empty-request: coefficient count must be >= 1");
  if (m > kMaxCoefficients)
    throw std::length_error("truncation-overflow: request exceeds the coefficient cap");
}

// Index one past the last entry of |x| still above 2^-60 of the running peak;
// tails below that cannot move a convolution at the tolerances used here.
std::size_t effective_length(const std::vector<double>& x) {
  double peak = 0.0;
  std::size_t keep = 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    peak = std::max(peak, std::abs(x[j]));
    if (std::abs(x[j]) > peak * 0x1p-60) keep = j + 1;
  }
  return std::min(keep, x.size());
}

}  // namespace

void TemperedOrder::validate() const {
  if (!std::isfinite(d) || !std::isfinite(lambda))
    throw std::invalid_argument("invalid-order: d and lambda must be finite");
  if (is_negative_integer(d))
    throw std::invalid_argument("invalid-order: d must not be a negative integer");
  if (lambda < 0.0) throw std::invalid_argument("invalid-order: lambda must be >= 0");
}

void ArmaPoly::validate() const {
  for (double v : phi)
    if (!std::isfinite(v)) throw std::invalid_argument("invalid-arma: phi must be finite");
  for (double v : theta)
    if (!std::isfinite(v)) throw std::invalid_argument("invalid-arma: theta must be finite");
  if (!phi.empty() && phi.back() == 0.0)
    throw std::invalid_argument("invalid-arma: phi_p must be nonzero");
  if (!theta.empty() && theta.back() == 0.0)
    throw std::invalid_argument("invalid-arma: theta_q must be nonzero");
  if (!phi.empty()) {
    std::vector<double> c(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) c[k] = -phi[k];
    if (min_root_modulus(c) <= 1.0)
      throw std::invalid_argument("invalid-arma: AR root inside the closed unit disk");
  }
  if (!theta.empty() && min_root_modulus(theta) <= 1.0)
    throw std::invalid_argument("invalid-arma: MA root inside the closed unit disk");
}

void ArtfimaParams::validate() const {
  order.validate();
  arma.validate();
  if (order.lambda <= 0.0)
    throw std::invalid_argument("invalid-order: lambda must be positive here");
}

bool ArtfimaParams::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<double> tempered_weights(const TemperedOrder& order, Sign sign, std::size_t m) {
  order.validate();
  check_count(m);
  const double dd = sign == Sign::integrate ? order.d : -order.d;
  const double decay = std::exp(-order.lambda);
  std::vector<double> w(m);
  w[0] = 1.0;
  for (std::size_t j = 1; j < m; ++j) {
    const double jd = static_cast<double>(j);
    w[j] = w[j - 1] * decay * (jd - 1.0 + dd) / jd;
  }
  return w;
}

std::vector<double> arma_expansion(const ArmaPoly& arma, Direction dir, std::size_t m) {
  arma.validate();
  check_count(m);
  std::vector<double> out(m, 0.0);
  out[0] = 1.0;
  if (dir == Direction::theta_over_phi) {
    // b(j) = theta_j + sum_k phi_k b(j-k)
    for (std::size_t j = 1; j < m; ++j) {
      double v = j <= arma.q() ? arma.theta[j - 1] : 0.0;
      const std::size_t kmax = std::min(j, arma.p());
      for (std::size_t k = 1; k <= kmax; ++k) v += arma.phi[k - 1] * out[j - k];
      out[j] = v;
    }
  } else {
    // c(j) = -phi_j - sum_k theta_k c(j-k)
    for (std::size_t j = 1; j < m; ++j) {
      double v = j <= arma.p() ? -arma.phi[j - 1] : 0.0;
      const std::size_t kmax = std::min(j, arma.q());
      for (std::size_t k = 1; k <= kmax; ++k) v -= arma.theta[k - 1] * out[j - k];
      out[j] = v;
    }
  }
  return out;
}

std::vector<double> convolve_truncated(std::span<const double> a, std::span<const double> b,
                                       std::size_t m) {
  check_count(m);
  if (a.empty() || b.empty()) return std::vector<double>(m, 0.0);
  const std::size_t la = std::min(a.size(), m);
  const std::size_t lb = std::min(b.size(), m);
  const double cost = static_cast<double>(m) * static_cast<double>(std::min(la, lb));
  if (cost > 1e7 && std::min(la, lb) >= 64) {
    std::vector<double> full = fft_convolve(a.subspan(0, la), b.subspan(0, lb));
    full.resize(m, 0.0);
    return full;
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t lo = j + 1 > lb ? j + 1 - lb : 0;
    const std::size_t hi = std::min(j, la - 1);
    double s = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) s += a[k] * b[j - k];
    out[j] = s;
  }
  return out;
}

std::vector<double> ma_coefficients(const ArtfimaParams& params, std::size_t m) {
  params.order.validate();
  params.arma.validate();
  std::vector<double> w = tempered_weights(params.order, Sign::integrate, m);
  if (params.arma.p() == 0 && params.arma.q() == 0) return w;
  std::vector<double> b = arma_expansion(params.arma, Direction::theta_over_phi, m);
  b.resize(effective_length(b));
  return convolve_truncated(w, b, m);
}

std::vector<double> ar_coefficients(const ArtfimaParams& params, std::size_t m) {
  params.order.validate();
  params.arma.validate();
  std::vector<double> w = tempered_weights(params.order, Sign::difference, m);
  if (params.arma.p() == 0 && params.arma.q() == 0) return w;
  std::vector<double> c = arma_expansion(params.arma, Direction::phi_over_theta, m);
  c.resize(effective_length(c));
  return convolve_truncated(w, c, m);
}

std::vector<double> second_kind_ma_weights(const ArtfimaParams& params, std::size_t m) {
  params.order.validate();
  params.arma.validate();
  TemperedOrder untempered{params.order.d, 0.0};
  std::vector<double> a = tempered_weights(untempered, Sign::integrate, m);
  if (params.arma.p() != 0 || params.arma.q() != 0) {
    std::vector<double> b = arma_expansion(params.arma, Direction::theta_over_phi, m);
    b.resize(effective_length(b));
    a = convolve_truncated(a, b, m);
  }
  for (std::size_t j = 1; j < m; ++j) a[j] *= std::exp(-params.order.lambda * static_cast<double>(j));
  return a;
}

namespace {

// ln of the asymptotic weight bound Gamma(d)^{-1} M^{d-1} e^{-lambda M}.
double log_weight_bound(const TemperedOrder& o, double M) {
  return (o.d - 1.0) * std::log(M) - o.lambda * M - std::lgamma(o.d);
}

}  // namespace

std::size_t truncation_length(const TemperedOrder& order, double tol) {
  order.validate();
  if (order.lambda <= 0.0)
    throw std::invalid_argument("invalid-order: truncation_length requires lambda > 0");
  if (!(tol > 0.0) || tol >= 1.0)
    throw std::invalid_argument("invalid-tolerance: tol must lie in (0, 1)");
  const double a = -std::log(tol) - std::lgamma(order.d);
  double M = std::max(1.0, -std::log(tol) / order.lambda);
  for (int it = 0; it < 200; ++it) {
    const double next = std::max(1.0, (a + (order.d - 1.0) * std::log(std::max(M, 1.0))) / order.lambda);
    if (std::abs(next - M) < 1e-10 * std::max(M, 1.0)) {
      M = next;
      break;
    }
    M = next;
  }
  double Mi = std::max(1.0, std::ceil(M - 1e-9));
  const double log_tol = std::log(tol);
  while (log_weight_bound(order, Mi) > log_tol && Mi < static_cast<double>(kMaxCoefficients)) Mi += 1.0;
  if (Mi + 1.0 > static_cast<double>(kMaxCoefficients))
    throw std::length_error("truncation-overflow: filter exceeds the coefficient cap");
  return static_cast<std::size_t>(Mi);
}

namespace {

std::complex<double> poly_eval(std::span<const double> c, std::complex<double> z) {
  // 1 + c0 z + c1 z^2 + ...
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc * z + 1.0;
}

}  // namespace

double min_root_modulus(std::span<const double> c) {
  std::size_t deg = c.size();
  while (deg > 0 && c[deg - 1] == 0.0) --deg;
  if (deg == 0) return std::numeric_limits<double>::infinity();
  if (deg == 1) return 1.0 / std::abs(c[0]);
  if (deg == 2) {
    // c1 z^2 + c0 z + 1
    const std::complex<double> disc = std::sqrt(std::complex<double>(c[0] * c[0] - 4.0 * c[1], 0.0));
    const std::complex<double> r1 = (-c[0] + disc) / (2.0 * c[1]);
    const std::complex<double> r2 = (-c[0] - disc) / (2.0 * c[1]);
    return std::min(std::abs(r1), std::abs(r2));
  }
  // Durand-Kerner on the monic reversal-free form; degrees here are tiny.
  const double lead = c[deg - 1];
  std::vector<std::complex<double>> z(deg), f(deg);
  const double radius = 1.0 + std::pow(1.0 / std::abs(lead), 1.0 / static_cast<double>(deg));
  for (std::size_t i = 0; i < deg; ++i) {
    const double ang = 2.0 * M_PI * (static_cast<double>(i) + 0.37) / static_cast<double>(deg);
    z[i] = radius * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](std::complex<double> x) { return poly_eval(c.subspan(0, deg), x); };
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      std::complex<double> denom = lead;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= z[i] - z[j];
      const std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-13) break;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : z) best = std::min(best, std::abs(r));
  return best;
}

}  // namespace artfima

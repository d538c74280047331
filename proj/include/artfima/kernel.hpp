#pragma once
//
// Tempered fractional weights and ARMA power-series expansions.
//
// The tempered binomial weights
//
//   omega_{-d,lambda}(j) = Gamma(j+d) / (Gamma(d) Gamma(j+1)) * exp(-lambda*j)
//
// are generated by the multiplicative recursion
//
//   omega(0) = 1,   omega(j) = omega(j-1) * exp(-lambda) * (j-1+d) / j,
//
// which never touches Gamma directly and stays finite for every admissible d.
// The difference-side weights omega_{+d,lambda} follow from d -> -d.
//

#include <cstddef>
#include <span>
#include <vector>

namespace artfima {

// Hard cap on generated coefficient counts; larger requests are an error.
inline constexpr std::size_t kMaxCoefficients = 1'000'000;

// Which power of (1 - e^{-lambda} B) a weight sequence expands:
// integrate -> omega_{-d,lambda} (MA side), difference -> omega_{+d,lambda} (AR side).
enum class Sign { integrate, difference };

// Which rational function an ARMA expansion represents.
enum class Direction { theta_over_phi, phi_over_theta };

struct TemperedOrder {
  double d = 0.0;
  double lambda = 0.0;

  // d finite and not a negative integer; lambda finite and >= 0.
  void validate() const;
};

// Phi(z) = 1 - phi_1 z - ... - phi_p z^p, Theta(z) = 1 + theta_1 z + ... + theta_q z^q.
struct ArmaPoly {
  std::vector<double> phi;
  std::vector<double> theta;

  std::size_t p() const { return phi.size(); }
  std::size_t q() const { return theta.size(); }

  // All roots of Phi and Theta strictly outside the closed unit disk;
  // leading coefficients nonzero when p or q > 0.
  void validate() const;
};

struct ArtfimaParams {
  TemperedOrder order;
  ArmaPoly arma;

  // Parameter-space membership for fitting and simulation: order and arma
  // valid, and lambda strictly positive. Weight generation alone also
  // accepts lambda = 0 (untempered ARFIMA); use TemperedOrder::validate.
  void validate() const;
  bool is_valid() const;
};

// omega_{-d,lambda}(0..m-1) or omega_{+d,lambda}(0..m-1).
std::vector<double> tempered_weights(const TemperedOrder& order, Sign sign, std::size_t m);

// Power-series coefficients of Theta/Phi (MA form b) or Phi/Theta (AR form c).
std::vector<double> arma_expansion(const ArmaPoly& arma, Direction dir, std::size_t m);

// ARTFIMA MA(infinity) coefficients a_{-d,lambda}(j) = sum_s omega_{-d,lambda}(s) b(j-s).
std::vector<double> ma_coefficients(const ArtfimaParams& params, std::size_t m);

// AR(infinity) coefficients c_{d,lambda}(j) = sum_s omega_{+d,lambda}(s) c_arma(j-s),
// the filter inverse of ma_coefficients: conv(a, c) = delta_0.
std::vector<double> ar_coefficients(const ArtfimaParams& params, std::size_t m);

// Second-kind MA weights e^{-lambda j} a_{-d}(j); equals ma_coefficients iff p=q=0.
std::vector<double> second_kind_ma_weights(const ArtfimaParams& params, std::size_t m);

// Smallest M with Gamma(d)^{-1} M^{d-1} e^{-lambda M} <= tol (asymptotic weight
// bound), solved by fixed-point iteration on
//   M = (-ln tol - ln|Gamma(d)| + (d-1) ln M) / lambda.
// Requires lambda > 0 and tol in (0,1).
std::size_t truncation_length(const TemperedOrder& order, double tol);

// First m coefficients of the linear convolution of a and b.
std::vector<double> convolve_truncated(std::span<const double> a, std::span<const double> b,
                                       std::size_t m);

// Smallest root modulus of 1 + c[0] z + c[1] z^2 + ... ; +inf for the empty
// polynomial. Used for the stationarity/invertibility checks.
double min_root_modulus(std::span<const double> c);

}  // namespace artfima

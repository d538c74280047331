#pragma once
//
// Theoretical co-difference of the stable ARTFIMA model,
//
//   tau(n) = sum_j [ |a(j)|^alpha + |a(j+n)|^alpha - |a(j) - a(j+n)|^alpha ],
//
// with a = a_{-d,lambda} and unit scale; tau = autocovariance when alpha = 2.
// Large-lag terms cancel catastrophically if evaluated literally, so each
// term is computed as |b|^alpha - |a|^alpha * expm1(alpha * log1p(-b/a))
// with |b| <= |a|.
//

#include <cstddef>
#include <string>
#include <vector>

#include "artfima/kernel.hpp"

namespace artfima {

struct CodiffCurve {
  std::vector<double> tau;        // lags 0..max_lag
  double alpha = 2.0;
  ArtfimaParams params;
  std::size_t inner_truncation = 0;  // MA coefficient count used per lag
};

struct AsymptoticLaw {
  std::string rate;    // normalizer description, e.g. "e^(-lambda*alpha*n) * n^(alpha*(d-1))"
  double constant = 0; // limit of tau(n) / rate(n)
};

// Both closed-form candidates for the alpha in (1,2) limit; they differ by
// the factor Gamma(d)^(alpha-1) and the implementation exposes both so the
// measured decay can arbitrate (asymptotic_constant returns the tempered form,
// which is the one the ratio tau(n)/rate(n) actually stabilizes onto).
struct LimitCandidates {
  double tempered_form = 0;    // (alpha/Gamma(d)) sum_j e^{-lambda j} omega_{-d,lambda}(j)^{alpha-1}
  double untempered_form = 0;  // Gamma(d)^{-alpha} sum_j alpha e^{-lambda alpha j} omega_{-d}(j)^{alpha-1}
};

CodiffCurve theoretical_codifference(const ArtfimaParams& params, double alpha,
                                     std::size_t max_lag, double tol = 1e-12);

// Limit law of tau(n) for p=q=0: alpha in (0,1) uses the rate
// e^{-lambda alpha n} n^{alpha(d-1)} with constant Gamma(d)^{-alpha} (1-e^{-lambda alpha})^{-1};
// alpha in (1,2] uses e^{-lambda n} n^{d-1} with the series constant evaluated
// to tolerance 1e-10. alpha = 1 is covered by neither branch.
AsymptoticLaw asymptotic_constant(const ArtfimaParams& params, double alpha);

LimitCandidates limit_candidates(const TemperedOrder& order, double alpha, double tol = 1e-10);

// tau(lag) / rate(lag) evaluated in log space so the normalizer cannot
// overflow or underflow for large lags.
double codiff_ratio(const CodiffCurve& curve, std::size_t lag);

// Running sums S_N = sum_{n=0}^N |tau(n)|.
std::vector<double> codiff_abs_partial_sums(const CodiffCurve& curve);

}  // namespace artfima

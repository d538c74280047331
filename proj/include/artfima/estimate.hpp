#pragma once
//
// Whittle estimation: self-normalized objective, bounded Nelder-Mead
// multistart, asymptotic W matrix, and McCulloch's quantile tail-index
// estimator.
//

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "artfima/kernel.hpp"
#include "artfima/spectral.hpp"
#include "artfima/types.hpp"

namespace artfima {

struct SearchConfig {
  std::size_t p = 0;
  std::size_t q = 0;
  double d_min = -0.95;
  double d_max = 1.5;
  double lambda_min = 1e-4;
  double lambda_max = 3.0;
  double arma_abs_max = 0.98;
  std::size_t multistarts = 24;    // coarse (d, log lambda) lattice x random ARMA starts
  std::uint64_t seed = 42;         // drives the random ARMA start coordinates
  double ftol = 1e-12;
  double xtol = 1e-9;
  std::size_t max_evals = 4000;    // per start
  int threads = 1;                 // parallel multistart; 0 = auto

  void validate() const;
};

struct StartRecord {
  std::vector<double> start;   // (phi.., d, lambda, theta..)
  std::vector<double> optimum;
  double value = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct SymMatrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major n*n

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct FitResult {
  ArtfimaParams beta_hat;
  double sigma2_hat = 0;
  bool converged = false;
  std::vector<StartRecord> trace;
  std::optional<SymMatrix> W;
};

// (2 pi / n) * sum_j I~(w_j) / g(w_j, beta) over the symmetric grid: positive
// frequencies doubled, the pi term counted once for even n.
double whittle_objective(const Periodogram& pgram, const ArtfimaParams& params);

FitResult fit_whittle(const SeriesData& series, const SearchConfig& config);

// W(beta) = integral over (-pi, pi] of grad log g * grad log g^T, central
// differences with relative step 1e-6, Gauss-Legendre quadrature on [0, pi]
// doubled by evenness. quad_points = node count on [0, pi].
SymMatrix compute_W(const ArtfimaParams& params, std::size_t quad_points = 1024);

// (1/2pi) * integral of g(w, beta1)/g(w, beta2) dw; > 1 whenever beta1 != beta2.
double transfer_ratio_integral(const ArtfimaParams& beta1, const ArtfimaParams& beta2,
                               std::size_t quad_points = 1024);

// Eigenvalues of a symmetric matrix, ascending (cyclic Jacobi; the matrices
// here are (p+q+2)-dimensional).
std::vector<double> symmetric_eigenvalues(const SymMatrix& m);

// Quantile-ratio estimate of the stability index, clamped to [0.593, 2.0]
// by the table range. Requires n >= 100.
double mcculloch_alpha(std::span<const double> x);

// Hazen plotting-position sample quantile (h = n*p + 1/2), shared by
// mcculloch_alpha and the Monte Carlo percentile intervals.
double hazen_quantile(std::span<const double> sorted_x, double p);

}  // namespace artfima

#include "artfima/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "artfima/stable.hpp"

namespace artfima {

namespace {

constexpr double kPenaltyBase = 1e10;
constexpr double kRootMargin = 1.0 + 1e-6;

struct ObjectiveGrid {
  std::vector<double> ordinates;  // self-normalized, omega in (0, pi]
  std::vector<double> cos_omega;
  std::vector<std::complex<double>> expi;  // e^{-i omega}, only built when p+q > 0
  std::size_t n = 0;
  bool has_pi = false;  // even n: last ordinate sits at omega = pi, counted once
};

ObjectiveGrid make_grid(const Periodogram& pg, bool needs_expi) {
  ObjectiveGrid g;
  g.ordinates = pg.ordinates;
  g.n = pg.n;
  g.has_pi = pg.n % 2 == 0;
  g.cos_omega.resize(pg.freqs.size());
  for (std::size_t i = 0; i < pg.freqs.size(); ++i) g.cos_omega[i] = std::cos(pg.freqs[i]);
  if (needs_expi) {
    g.expi.resize(pg.freqs.size());
    for (std::size_t i = 0; i < pg.freqs.size(); ++i)
      g.expi[i] = std::complex<double>(std::cos(pg.freqs[i]), -std::sin(pg.freqs[i]));
  }
  return g;
}

// sum with the symmetric-grid weights: doubled except the pi term.
double grid_objective(const ObjectiveGrid& g, const ArtfimaParams& p) {
  const double e1 = std::exp(-p.order.lambda);
  const double e2 = e1 * e1;
  const double d = p.order.d;
  const std::size_t m = g.ordinates.size();
  const bool arma = p.arma.p() != 0 || p.arma.q() != 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double base = 1.0 - 2.0 * e1 * g.cos_omega[i] + e2;
    double v = g.ordinates[i] * std::pow(base, d);
    if (arma) {
      std::complex<double> th(1.0, 0.0), ph(1.0, 0.0), zk(1.0, 0.0);
      const std::size_t kmax = std::max(p.arma.p(), p.arma.q());
      for (std::size_t k = 1; k <= kmax; ++k) {
        zk *= g.expi[i];
        if (k <= p.arma.q()) th += p.arma.theta[k - 1] * zk;
        if (k <= p.arma.p()) ph -= p.arma.phi[k - 1] * zk;
      }
      v *= std::norm(ph) / std::norm(th);
    }
    const bool is_pi = g.has_pi && i + 1 == m;
    acc += is_pi ? v : 2.0 * v;
  }
  return 2.0 * std::numbers::pi / static_cast<double>(g.n) * acc;
}

}  // namespace

void SearchConfig::validate() const {
  if (!(d_min <= d_max) || !(lambda_min <= lambda_max))
    throw std::invalid_argument("invalid-config: empty search box");
  if (lambda_min <= 0.0)
    throw std::invalid_argument("invalid-config: lambda box must lie in (0, inf)");
  if (!(arma_abs_max > 0.0) || arma_abs_max >= 1.0)
    throw std::invalid_argument("invalid-config: arma bound must lie in (0, 1)");
  if (multistarts == 0) throw std::invalid_argument("invalid-config: need at least one start");
  if (max_evals < 10) throw std::invalid_argument("invalid-config: max_evals too small");
  const double k = std::ceil(d_min);
  if (k < 0.0 && k <= d_max)
    throw std::invalid_argument("invalid-config: d box must exclude negative integers");
}

double whittle_objective(const Periodogram& pgram, const ArtfimaParams& params) {
  if (pgram.normalization != PgramNorm::self_normalized)
    throw std::invalid_argument("invalid-periodogram: whittle objective needs self-normalized input");
  params.validate();
  const ObjectiveGrid g = make_grid(pgram, params.arma.p() + params.arma.q() > 0);
  return grid_objective(g, params);
}

namespace {

struct NmResult {
  std::vector<double> x;
  double value = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, const std::vector<double>& step,
                     double ftol, double xtol, std::size_t max_evals) {
  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> pts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(dim + 1);
  std::size_t evals = 0;
  for (std::size_t i = 0; i <= dim; ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }

  std::vector<std::size_t> order(dim + 1);
  NmResult res;
  while (true) {
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double lo = pts[0][i], hi = pts[0][i];
      for (std::size_t k = 1; k <= dim; ++k) {
        lo = std::min(lo, pts[k][i]);
        hi = std::max(hi, pts[k][i]);
      }
      spread = std::max(spread, hi - lo);
    }
    if (vals[worst] - vals[best] <= ftol * (std::abs(vals[best]) + ftol) && spread <= xtol) {
      res.converged = true;
      break;
    }
    if (evals >= max_evals) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += pts[k][i];
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
      return x;
    };

    std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < vals[order[0]]) {
      std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = std::move(xe);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = std::move(xr);
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = std::move(xc);
        vals[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t k = 0; k <= dim; ++k) {
          if (k == best) continue;
          for (std::size_t i = 0; i < dim; ++i)
            pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
          vals[k] = f(pts[k]);
          ++evals;
        }
      }
    }
  }

  std::size_t argbest = 0;
  for (std::size_t i = 1; i <= dim; ++i)
    if (vals[i] < vals[argbest]) argbest = i;
  res.x = pts[argbest];
  res.value = vals[argbest];
  res.evaluations = evals;
  return res;
}

// optimizer coordinates: (phi.., d, ln lambda, theta..)
ArtfimaParams decode(const std::vector<double>& y, std::size_t p, std::size_t q) {
  ArtfimaParams out;
  out.arma.phi.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p));
  out.order.d = y[p];
  out.order.lambda = std::exp(y[p + 1]);
  out.arma.theta.assign(y.begin() + static_cast<std::ptrdiff_t>(p) + 2, y.end());
  return out;
}

double box_violation(const std::vector<double>& y, const SearchConfig& c) {
  const std::size_t p = c.p, q = c.q;
  double v = 0.0;
  auto over = [&v](double x, double lo, double hi) {
    if (x < lo) v += lo - x;
    if (x > hi) v += x - hi;
  };
  for (std::size_t i = 0; i < p; ++i) over(y[i], -c.arma_abs_max, c.arma_abs_max);
  over(y[p], c.d_min, c.d_max);
  over(y[p + 1], std::log(c.lambda_min), std::log(c.lambda_max));
  for (std::size_t i = 0; i < q; ++i) over(y[p + 2 + i], -c.arma_abs_max, c.arma_abs_max);
  return v;
}

double root_violation(const ArtfimaParams& par) {
  double v = 0.0;
  if (!par.arma.phi.empty()) {
    std::vector<double> c(par.arma.phi.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -par.arma.phi[k];
    const double r = min_root_modulus(c);
    if (r < kRootMargin) v += kRootMargin - r;
  }
  if (!par.arma.theta.empty()) {
    const double r = min_root_modulus(par.arma.theta);
    if (r < kRootMargin) v += kRootMargin - r;
  }
  return v;
}

}  // namespace

FitResult fit_whittle(const SeriesData& series, const SearchConfig& config) {
  config.validate();
  if (series.values.size() < 128)
    throw std::invalid_argument("invalid-series: whittle fit needs at least 128 observations");
  const Periodogram pg = self_normalized_periodogram(series);
  const std::size_t p = config.p, q = config.q;
  const ObjectiveGrid grid = make_grid(pg, p + q > 0);

  auto objective = [&](const std::vector<double>& y) {
    const double bv = box_violation(y, config);
    if (bv > 0.0) return kPenaltyBase * (1.0 + bv);
    const ArtfimaParams par = decode(y, p, q);
    const double rv = root_violation(par);
    if (rv > 0.0) return kPenaltyBase * (1.0 + rv);
    return grid_objective(grid, par);
  };

  // coarse (d, ln lambda) lattice crossed with random ARMA coordinates
  const std::size_t n_lambda = 3;
  const std::size_t n_d = (config.multistarts + n_lambda - 1) / n_lambda;
  std::vector<std::vector<double>> starts;
  const double llo = std::log(config.lambda_min), lhi = std::log(config.lambda_max);
  for (std::size_t i = 0; i < n_d && starts.size() < config.multistarts; ++i) {
    const double d0 = config.d_min + (static_cast<double>(i) + 0.5) * (config.d_max - config.d_min) /
                                         static_cast<double>(n_d);
    for (std::size_t j = 0; j < n_lambda && starts.size() < config.multistarts; ++j) {
      const double ll0 = llo + (static_cast<double>(j) + 0.5) * (lhi - llo) / static_cast<double>(n_lambda);
      std::vector<double> y(p + q + 2, 0.0);
      y[p] = d0;
      y[p + 1] = ll0;
      if (p + q > 0) {
        Rng rng(config.seed, starts.size());
        for (int attempt = 0; attempt < 64; ++attempt) {
          for (std::size_t k = 0; k < p; ++k) y[k] = 1.2 * (rng.uniform01() - 0.5);
          for (std::size_t k = 0; k < q; ++k) y[p + 2 + k] = 1.2 * (rng.uniform01() - 0.5);
          if (box_violation(y, config) == 0.0 && root_violation(decode(y, p, q)) == 0.0) break;
          if (attempt == 63)
            for (std::size_t k = 0; k < p + q + 2; ++k)
              if (k != p && k != p + 1) y[k] = 0.0;
        }
      }
      starts.push_back(std::move(y));
    }
  }

  std::vector<double> step(p + q + 2, 0.15);
  step[p + 1] = 0.6;

  std::vector<StartRecord> records(starts.size());
  auto run_start = [&](std::size_t s) {
    std::vector<double> st = step;
    for (std::size_t i = 0; i < st.size(); ++i) {
      std::vector<double> probe = starts[s];
      probe[i] += st[i];
      if (box_violation(probe, config) > 0.0) st[i] = -st[i];
    }
    NmResult nm = nelder_mead(objective, starts[s], st, config.ftol, config.xtol, config.max_evals);
    // one restart from the incumbent shakes off premature simplex collapse
    NmResult nm2 = nelder_mead(objective, nm.x, st, config.ftol, config.xtol, config.max_evals);
    nm2.evaluations += nm.evaluations;
    if (nm2.value <= nm.value) nm = std::move(nm2);
    records[s] = {starts[s], nm.x, nm.value, nm.evaluations, nm.converged};
    // report starts/optima in (phi, d, lambda, theta) coordinates
    records[s].start[p + 1] = std::exp(records[s].start[p + 1]);
    records[s].optimum[p + 1] = std::exp(records[s].optimum[p + 1]);
  };

  const int workers = std::max(1, config.threads == 0
                                      ? static_cast<int>(std::thread::hardware_concurrency())
                                      : config.threads);
  if (workers == 1 || starts.size() == 1) {
    for (std::size_t s = 0; s < starts.size(); ++s) run_start(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int use = std::min<std::size_t>(workers, starts.size());
    pool.reserve(static_cast<std::size_t>(use));
    for (int w = 0; w < use; ++w)
      pool.emplace_back([&] {
        for (std::size_t s = next.fetch_add(1); s < starts.size(); s = next.fetch_add(1))
          run_start(s);
      });
    for (auto& t : pool) t.join();
  }

  std::size_t win = 0;
  for (std::size_t s = 1; s < records.size(); ++s)
    if (records[s].value < records[win].value) win = s;  // ties keep the lowest index
  if (records[win].value >= kPenaltyBase)
    throw std::runtime_error("no-feasible-point: every start ended outside the parameter space");

  FitResult out;
  out.trace = std::move(records);
  const StartRecord& w = out.trace[win];
  out.beta_hat.arma.phi.assign(w.optimum.begin(), w.optimum.begin() + static_cast<std::ptrdiff_t>(p));
  out.beta_hat.order.d = w.optimum[p];
  out.beta_hat.order.lambda = w.optimum[p + 1];
  out.beta_hat.arma.theta.assign(w.optimum.begin() + static_cast<std::ptrdiff_t>(p) + 2,
                                 w.optimum.end());
  out.sigma2_hat = w.value;
  out.converged = w.converged;
  out.beta_hat.validate();
  return out;
}

// ---------------------------------------------------------------------------
// quadrature and the W matrix

namespace {

void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
      }
      pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

std::vector<double> beta_vector(const ArtfimaParams& p) {
  std::vector<double> b;
  b.insert(b.end(), p.arma.phi.begin(), p.arma.phi.end());
  b.push_back(p.order.d);
  b.push_back(p.order.lambda);
  b.insert(b.end(), p.arma.theta.begin(), p.arma.theta.end());
  return b;
}

ArtfimaParams params_from_beta(const std::vector<double>& b, std::size_t p, std::size_t q) {
  ArtfimaParams out;
  out.arma.phi.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(p));
  out.order.d = b[p];
  out.order.lambda = b[p + 1];
  out.arma.theta.assign(b.begin() + static_cast<std::ptrdiff_t>(p) + 2, b.end());
  return out;
}

double log_transfer(const ArtfimaParams& par, double omega) {
  const double g = transfer_function_at(par, omega);
  if (!(g > 0.0) || !std::isfinite(g))
    throw std::runtime_error("gradient-failure: transfer function not positive-finite");
  return std::log(g);
}

}  // namespace

SymMatrix compute_W(const ArtfimaParams& params, std::size_t quad_points) {
  params.validate();
  if (quad_points < 8) throw std::invalid_argument("invalid-config: too few quadrature points");
  const std::size_t p = params.arma.p(), q = params.arma.q();
  const std::vector<double> b0 = beta_vector(params);
  const std::size_t dim = b0.size();

  std::vector<double> nodes, weights;
  gauss_legendre(quad_points, nodes, weights);
  // map [-1, 1] -> [0, pi]; integrand even, so the (-pi, 0) half doubles
  const double half = std::numbers::pi / 2.0;

  std::vector<std::vector<double>> grad(dim, std::vector<double>(quad_points));
  for (std::size_t k = 0; k < dim; ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(b0[k]));
    std::vector<double> bp = b0, bm = b0;
    bp[k] += h;
    bm[k] -= h;
    const ArtfimaParams pp = params_from_beta(bp, p, q);
    const ArtfimaParams pm = params_from_beta(bm, p, q);
    if (pm.order.lambda <= 0.0)
      throw std::runtime_error("gradient-failure: lambda stepped out of (0, inf)");
    for (std::size_t i = 0; i < quad_points; ++i) {
      const double omega = half * (nodes[i] + 1.0);
      grad[k][i] = (log_transfer(pp, omega) - log_transfer(pm, omega)) / (2.0 * h);
      if (!std::isfinite(grad[k][i]))
        throw std::runtime_error("gradient-failure: non-finite gradient of log g");
    }
  }

  SymMatrix W;
  W.n = dim;
  W.a.assign(dim * dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < quad_points; ++i) acc += weights[i] * grad[r][i] * grad[c][i];
      const double v = acc * half * 2.0;  // jacobian times the even-function doubling
      W.at(r, c) = v;
      W.at(c, r) = v;
    }
  return W;
}

double transfer_ratio_integral(const ArtfimaParams& beta1, const ArtfimaParams& beta2,
                               std::size_t quad_points) {
  beta1.validate();
  beta2.validate();
  std::vector<double> nodes, weights;
  gauss_legendre(quad_points, nodes, weights);
  const double half = std::numbers::pi / 2.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < quad_points; ++i) {
    const double omega = half * (nodes[i] + 1.0);
    acc += weights[i] * transfer_function_at(beta1, omega) / transfer_function_at(beta2, omega);
  }
  // (1/2pi) * 2 * (pi/2) * sum = sum / 2
  return acc * half * 2.0 / (2.0 * std::numbers::pi);
}

std::vector<double> symmetric_eigenvalues(const SymMatrix& m) {
  const std::size_t n = m.n;
  std::vector<double> a = m.a;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-28) break;
    for (std::size_t pi = 0; pi < n; ++pi)
      for (std::size_t qi = pi + 1; qi < n; ++qi) {
        if (std::abs(at(pi, qi)) < 1e-300) continue;
        const double theta = (at(qi, qi) - at(pi, pi)) / (2.0 * at(pi, qi));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, pi), akq = at(k, qi);
          at(k, pi) = c * akp - s * akq;
          at(k, qi) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(pi, k), aqk = at(qi, k);
          at(pi, k) = c * apk - s * aqk;
          at(qi, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

// ---------------------------------------------------------------------------
// McCulloch quantile estimator

double hazen_quantile(std::span<const double> sorted_x, double p) {
  const std::size_t n = sorted_x.size();
  if (n == 0) throw std::invalid_argument("empty-request: quantile of an empty sample");
  const double h = static_cast<double>(n) * p + 0.5;
  if (h <= 1.0) return sorted_x[0];
  if (h >= static_cast<double>(n)) return sorted_x[n - 1];
  const std::size_t k = static_cast<std::size_t>(h);  // 1-based lower order statistic
  const double g = h - static_cast<double>(k);
  return sorted_x[k - 1] * (1.0 - g) + sorted_x[k] * g;
}

double mcculloch_alpha(std::span<const double> x) {
  if (x.size() < 100)
    throw std::invalid_argument("invalid-series: McCulloch estimation needs n >= 100");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double q95 = hazen_quantile(s, 0.95), q05 = hazen_quantile(s, 0.05);
  const double q75 = hazen_quantile(s, 0.75), q25 = hazen_quantile(s, 0.25);
  const double iqr = q75 - q25;
  if (iqr <= 0.0) throw std::runtime_error("degenerate-series: zero interquartile range");
  double nu = (q95 - q05) / iqr;

  // McCulloch (1986) Table III, symmetric (beta = 0) column.
  static constexpr double nu_tab[] = {2.439, 2.5, 2.6, 2.7, 2.8, 3.0, 3.2, 3.5,
                                      4.0,   5.0, 6.0, 8.0, 10., 15., 25.};
  static constexpr double al_tab[] = {2.000, 1.916, 1.808, 1.729, 1.664, 1.563, 1.484, 1.391,
                                      1.279, 1.128, 1.029, 0.896, 0.818, 0.698, 0.593};
  constexpr std::size_t tab_n = std::size(nu_tab);
  if (nu <= nu_tab[0]) return al_tab[0];
  if (nu >= nu_tab[tab_n - 1]) return al_tab[tab_n - 1];
  std::size_t i = 0;
  while (nu > nu_tab[i + 1]) ++i;
  const double t = (nu - nu_tab[i]) / (nu_tab[i + 1] - nu_tab[i]);
  return al_tab[i] * (1.0 - t) + al_tab[i + 1] * t;
}

}  // namespace artfima

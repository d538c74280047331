#include "artfima/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "artfima/simulate.hpp"

namespace artfima {

void McConfig::validate() const {
  true_params.validate();
  innovation.validate();
  search.validate();
  if (replicates < 2) throw std::invalid_argument("invalid-config: need at least 2 replicates");
  if (n < 256) throw std::invalid_argument("invalid-config: replicate length must be >= 256");
  if (search.p != true_params.arma.p() || search.q != true_params.arma.q())
    throw std::invalid_argument("invalid-config: search (p, q) must match the true model order");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int t = static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* env = std::getenv("ARTFIMA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) t = std::min(t, cap);
  }
  return t;
}

namespace {

std::vector<std::string> param_names(std::size_t p, std::size_t q) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names.push_back("phi" + std::to_string(i));
  names.push_back("d");
  names.push_back("lambda");
  for (std::size_t i = 1; i <= q; ++i) names.push_back("theta" + std::to_string(i));
  return names;
}

std::vector<double> flatten(const ArtfimaParams& par) {
  std::vector<double> v;
  v.insert(v.end(), par.arma.phi.begin(), par.arma.phi.end());
  v.push_back(par.order.d);
  v.push_back(par.order.lambda);
  v.insert(v.end(), par.arma.theta.begin(), par.arma.theta.end());
  return v;
}

}  // namespace

McReport run_mc_study(const McConfig& config) {
  config.validate();
  const std::size_t R = config.replicates;
  const std::size_t dim = config.true_params.arma.p() + config.true_params.arma.q() + 2;

  std::vector<std::vector<double>> estimates(R);
  std::vector<char> ok(R, 0);
  std::vector<std::string> errors(R);

  auto run_replicate = [&](std::size_t r) {
    try {
      const SeriesData x = simulate_artfima(config.true_params, config.innovation, config.n,
                                            config.seed, config.sim_tol,
                                            config.shared_stream ? 0 : r);
      SearchConfig sc = config.search;
      sc.threads = 1;  // parallelism lives at the replicate level
      const FitResult fit = fit_whittle(x, sc);
      estimates[r] = flatten(fit.beta_hat);
      ok[r] = 1;
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  };

  const int workers = resolve_threads(config.threads);
  if (workers == 1) {
    for (std::size_t r = 0; r < R; ++r) run_replicate(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t use = std::min<std::size_t>(static_cast<std::size_t>(workers), R);
    pool.reserve(use);
    for (std::size_t w = 0; w < use; ++w)
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < R; r = next.fetch_add(1)) run_replicate(r);
      });
    for (auto& t : pool) t.join();
  }

  McReport report;
  report.requested = R;
  for (std::size_t r = 0; r < R; ++r) {
    if (ok[r]) {
      report.estimates.push_back(std::move(estimates[r]));
      report.replicate_ids.push_back(r);
    } else {
      report.failed.push_back(r);
    }
  }
  if (report.failed.size() * 10 > R)
    throw std::runtime_error("study-unreliable: more than 10% of replicate fits failed (" +
                             std::to_string(report.failed.size()) + "/" + std::to_string(R) + ")");
  const std::size_t used = report.estimates.size();
  if (used < 2) throw std::runtime_error("study-unreliable: fewer than 2 usable replicates");

  const std::vector<double> truth = flatten(config.true_params);
  const std::vector<std::string> names =
      param_names(config.true_params.arma.p(), config.true_params.arma.q());
  report.stats.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    ParamStats& st = report.stats[k];
    st.name = names[k];
    st.true_value = truth[k];
    double mean = 0.0, mse = 0.0;
    std::vector<double> col(used);
    for (std::size_t i = 0; i < used; ++i) {
      const double v = report.estimates[i][k];
      col[i] = v;
      mean += v;
      mse += (v - truth[k]) * (v - truth[k]);
    }
    st.mean = mean / static_cast<double>(used);
    st.bias = st.mean - truth[k];
    st.mse = mse / static_cast<double>(used);
    std::sort(col.begin(), col.end());
    st.ci_lo = hazen_quantile(col, 0.025);
    st.ci_hi = hazen_quantile(col, 0.975);
  }
  return report;
}

nlohmann::json McReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "artfima-stable/1";
  j["report"] = "mc-study";
  j["replicates_requested"] = requested;
  j["replicates_used"] = estimates.size();
  j["failed_replicates"] = failed;
  nlohmann::json js = nlohmann::json::array();
  for (const ParamStats& st : stats)
    js.push_back({{"name", st.name},
                  {"true", st.true_value},
                  {"mean", st.mean},
                  {"bias", st.bias},
                  {"mse", st.mse},
                  {"ci_lo", st.ci_lo},
                  {"ci_hi", st.ci_hi}});
  j["parameters"] = js;
  nlohmann::json je = nlohmann::json::array();
  for (std::size_t i = 0; i < estimates.size(); ++i)
    je.push_back({{"replicate", replicate_ids[i]}, {"estimate", estimates[i]}});
  j["estimates"] = je;
  return j;
}

}  // namespace artfima

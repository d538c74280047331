#include "artfima/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "artfima/codifference.hpp"
#include "artfima/diagnostics.hpp"
#include "artfima/estimate.hpp"
#include "artfima/ingest.hpp"
#include "artfima/montecarlo.hpp"
#include "artfima/simulate.hpp"
#include "artfima/spectral.hpp"
#include "artfima/stable.hpp"

namespace artfima {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;  // fixed so every run is reproducible by default

struct ModelFlags {
  double d = 0.0;
  double lambda = 0.0;
  std::vector<double> phi;
  std::vector<double> theta;

  ArtfimaParams params() const {
    ArtfimaParams p;
    p.order.d = d;
    p.order.lambda = lambda;
    p.arma.phi = phi;
    p.arma.theta = theta;
    p.validate();
    return p;
  }
};

void add_model_flags(CLI::App* sub, ModelFlags& m) {
  sub->add_option("--d", m.d, "memory parameter d")->required();
  sub->add_option("--lambda", m.lambda, "tempering parameter (> 0)")->required();
  sub->add_option("--phi", m.phi, "AR coefficients");
  sub->add_option("--theta", m.theta, "MA coefficients");
}

void add_search_flags(CLI::App* sub, SearchConfig& c) {
  sub->add_option("--p", c.p, "AR order to fit");
  sub->add_option("--q", c.q, "MA order to fit");
  sub->add_option("--d-min", c.d_min, "lower box bound for d");
  sub->add_option("--d-max", c.d_max, "upper box bound for d");
  sub->add_option("--lambda-min", c.lambda_min, "lower box bound for lambda");
  sub->add_option("--lambda-max", c.lambda_max, "upper box bound for lambda");
  sub->add_option("--starts", c.multistarts, "number of multistart points");
  sub->add_option("--max-evals", c.max_evals, "objective evaluation cap per start");
  sub->add_option("--seed", c.seed, "multistart RNG seed");
  sub->add_option("--threads", c.threads, "starts run in parallel (0 = auto)");
}

nlohmann::json params_json(const ArtfimaParams& p) {
  return {{"phi", p.arma.phi}, {"theta", p.arma.theta}, {"d", p.order.d}, {"lambda", p.order.lambda}};
}

SeriesData load_column(const std::string& path, const std::string& column) {
  IngestSpec spec;
  spec.paths = {path};
  spec.columns = {column};
  spec.merge = MergeRule::single;
  return ingest(spec);
}

void emit_json(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("io-error: cannot write " + out);
  f << j.dump(2) << "\n";
}

void write_sidecar(const std::string& out, nlohmann::json meta) {
  meta["schema"] = "artfima-stable/1";
  std::ofstream f(out + ".meta.json");
  if (!f) throw std::runtime_error("io-error: cannot write " + out + ".meta.json");
  f << meta.dump(2) << "\n";
}

// all mutable CLI state in one bundle so every invocation starts from defaults
struct CliState {
  ModelFlags sim_model;
  double sim_alpha = 2.0, sim_sigma = 1.0, sim_tol = 1e-12;
  std::size_t sim_n = 0;
  std::uint64_t sim_seed = kDefaultSeed, sim_stream = 0;
  std::string sim_out;

  std::string fit_in, fit_col = "x", fit_out;
  SearchConfig fit_search;
  bool fit_demean = false, fit_wmatrix = false;

  ModelFlags cod_model;
  double cod_alpha = 2.0, cod_tol = 1e-12;
  std::size_t cod_maxlag = 100;
  std::string cod_out, cod_asym;

  std::string pg_in, pg_col = "x", pg_out;
  double pg_alpha = 0.0;

  std::string acf_in, acf_col = "x", acf_out;
  std::size_t acf_maxlag = 50;
  bool acf_norm = false;

  ModelFlags res_model;
  std::string res_in, res_col = "x", res_out;
  double res_tol = 1e-12;

  std::string lb_in, lb_col = "x", lb_out;
  std::size_t lb_lags = 20, lb_fitdf = 0;

  std::string alp_in, alp_col = "x", alp_out;

  ModelFlags mc_model;
  double mc_alpha = 2.0, mc_sigma = 1.0;
  McConfig mc_cfg;
  bool mc_full = false;
  std::string mc_out, mc_est_csv;

  IngestSpec ing_spec;
  std::vector<std::string> ing_transforms;
  std::string ing_merge = "single", ing_out;
};

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  static CliState st;
  st = CliState{};

  CLI::App app{"artfima-stable: tempered fractional time series with stable innovations"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "simulate an ARTFIMA path with SaS innovations");
  add_model_flags(sim, st.sim_model);
  sim->add_option("--alpha", st.sim_alpha, "stability index in (0, 2]")->capture_default_str();
  sim->add_option("--sigma", st.sim_sigma, "scale parameter")->capture_default_str();
  sim->add_option("--n", st.sim_n, "series length")->required();
  sim->add_option("--seed", st.sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("--stream", st.sim_stream, "RNG substream")->capture_default_str();
  sim->add_option("--tol", st.sim_tol, "filter truncation tolerance")->capture_default_str();
  sim->add_option("--out", st.sim_out, "output CSV path")->required();
  sim->callback([] {
    StableSpec spec;
    spec.alpha = st.sim_alpha;
    spec.sigma = st.sim_sigma;
    const SeriesData x = simulate_artfima(st.sim_model.params(), spec, st.sim_n, st.sim_seed,
                                          st.sim_tol, st.sim_stream);
    write_series_csv(st.sim_out, x);
    write_sidecar(st.sim_out, x.meta);
  });

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "Whittle fit of an ARTFIMA(p,d,lambda,q) model");
  fit->add_option("input", st.fit_in, "input CSV")->required();
  fit->add_option("--column", st.fit_col, "value column name")->capture_default_str();
  fit->add_flag("--demean", st.fit_demean, "subtract the sample mean before fitting");
  fit->add_flag("--wmatrix", st.fit_wmatrix, "include the limit-law W matrix at the optimum");
  add_search_flags(fit, st.fit_search);
  fit->add_option("--out", st.fit_out, "output JSON path (default: stdout)");
  fit->callback([] {
    SeriesData x = load_column(st.fit_in, st.fit_col);
    if (st.fit_demean) apply_transforms(x, {{Transform::Kind::demean}});
    const FitResult res = fit_whittle(x, st.fit_search);
    std::size_t evals = 0;
    for (const StartRecord& r : res.trace) evals += r.evaluations;
    nlohmann::json j{{"schema", "artfima-stable/1"},
                     {"report", "whittle-fit"},
                     {"input", st.fit_in},
                     {"n", x.values.size()},
                     {"params", params_json(res.beta_hat)},
                     {"sigma2_hat", res.sigma2_hat},
                     {"converged", res.converged},
                     {"starts", res.trace.size()},
                     {"evaluations", evals}};
    if (st.fit_wmatrix) {
      const SymMatrix W = compute_W(res.beta_hat);
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t r = 0; r < W.n; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < W.n; ++c) row.push_back(W.a[r * W.n + c]);
        rows.push_back(row);
      }
      j["W"] = rows;
      j["W_eigenvalues"] = symmetric_eigenvalues(W);
    }
    emit_json(j, st.fit_out);
    if (!st.fit_out.empty()) {
      std::printf("%-8s %14s\n", "param", "estimate");
      for (std::size_t i = 0; i < res.beta_hat.arma.p(); ++i)
        std::printf("phi%-5zu %14.6f\n", i + 1, res.beta_hat.arma.phi[i]);
      std::printf("%-8s %14.6f\n", "d", res.beta_hat.order.d);
      std::printf("%-8s %14.6f\n", "lambda", res.beta_hat.order.lambda);
      for (std::size_t i = 0; i < res.beta_hat.arma.q(); ++i)
        std::printf("theta%-3zu %14.6f\n", i + 1, res.beta_hat.arma.theta[i]);
      std::printf("%-8s %14.6g\n", "sigma2", res.sigma2_hat);
    }
  });

  // ---- codiff ----
  auto* cod = app.add_subcommand("codiff", "theoretical co-difference curve of a model");
  add_model_flags(cod, st.cod_model);
  cod->add_option("--alpha", st.cod_alpha, "stability index in (0, 2]")->capture_default_str();
  cod->add_option("--max-lag", st.cod_maxlag, "largest lag")->capture_default_str();
  cod->add_option("--tol", st.cod_tol, "kernel truncation tolerance")->capture_default_str();
  cod->add_option("--out", st.cod_out, "output CSV path")->required();
  cod->add_option("--asymptotics", st.cod_asym,
                  "also write (lag, ratio, limit) against the limit law (p=q=0, alpha != 1)");
  cod->callback([] {
    const ArtfimaParams par = st.cod_model.params();
    const CodiffCurve curve = theoretical_codifference(par, st.cod_alpha, st.cod_maxlag, st.cod_tol);
    std::vector<double> lags(curve.tau.size());
    for (std::size_t i = 0; i < lags.size(); ++i) lags[i] = static_cast<double>(i);
    write_table_csv(st.cod_out, {"lag", "tau"}, {lags, curve.tau});
    if (!st.cod_asym.empty()) {
      const AsymptoticLaw law = asymptotic_constant(par, st.cod_alpha);
      std::vector<double> alag, ratio, limit;
      for (std::size_t h = 1; h < curve.tau.size(); ++h) {
        alag.push_back(static_cast<double>(h));
        ratio.push_back(codiff_ratio(curve, h));
        limit.push_back(law.constant);
      }
      write_table_csv(st.cod_asym, {"lag", "ratio", "limit"}, {alag, ratio, limit});
    }
    nlohmann::json meta{{"report", "codifference"},
                        {"params", params_json(par)},
                        {"alpha", st.cod_alpha},
                        {"tol", st.cod_tol},
                        {"inner_truncation", curve.inner_truncation}};
    if (par.arma.p() == 0 && par.arma.q() == 0 && st.cod_alpha != 1.0 && par.order.d > 0.0) {
      const AsymptoticLaw law = asymptotic_constant(par, st.cod_alpha);
      meta["asymptotics"] = {{"rate", law.rate}, {"constant", law.constant}};
    }
    write_sidecar(st.cod_out, meta);
  });

  // ---- periodogram ----
  auto* pg = app.add_subcommand("periodogram", "self-normalized (or alpha-scaled) periodogram");
  pg->add_option("input", st.pg_in, "input CSV")->required();
  pg->add_option("--column", st.pg_col, "value column name")->capture_default_str();
  pg->add_option("--alpha", st.pg_alpha,
                 "use the n^{-2/alpha} scaling instead of self-normalization");
  pg->add_option("--out", st.pg_out, "output CSV path")->required();
  pg->callback([] {
    const SeriesData x = load_column(st.pg_in, st.pg_col);
    const Periodogram res = st.pg_alpha > 0.0 ? alpha_scaled_periodogram(x, st.pg_alpha)
                                              : self_normalized_periodogram(x);
    write_table_csv(st.pg_out, {"omega", "ordinate"}, {res.freqs, res.ordinates});
    write_sidecar(st.pg_out,
                  {{"report", "periodogram"},
                   {"input", st.pg_in},
                   {"n", res.n},
                   {"normalization", st.pg_alpha > 0.0 ? "alpha-scaled" : "self-normalized"},
                   {"alpha", res.alpha},
                   {"dc_ordinate", res.dc_ordinate}});
  });

  // ---- acf ----
  auto* acf = app.add_subcommand("acf", "sample ACF or normalized sample autocovariance");
  acf->add_option("input", st.acf_in, "input CSV")->required();
  acf->add_option("--column", st.acf_col, "value column name")->capture_default_str();
  acf->add_option("--max-lag", st.acf_maxlag, "largest lag")->capture_default_str();
  acf->add_flag("--normalized", st.acf_norm,
                "heavy-tail normalized autocovariance (no mean correction)");
  acf->add_option("--out", st.acf_out, "output CSV path")->required();
  acf->callback([] {
    const SeriesData x = load_column(st.acf_in, st.acf_col);
    const AcfResult res =
        st.acf_norm ? normalized_sample_acvf(x, st.acf_maxlag) : sample_acf(x, st.acf_maxlag);
    std::vector<double> lags(res.values.size()), band(res.values.size(), res.band);
    for (std::size_t i = 0; i < lags.size(); ++i) lags[i] = static_cast<double>(i);
    write_table_csv(st.acf_out, {"lag", "value", "band"}, {lags, res.values, band});
    write_sidecar(st.acf_out, {{"report", st.acf_norm ? "normalized-acvf" : "acf"},
                               {"input", st.acf_in},
                               {"n", res.n},
                               {"band", res.band}});
  });

  // ---- residuals ----
  auto* res = app.add_subcommand("residuals", "invert a fitted model to recover innovations");
  res->add_option("input", st.res_in, "input CSV")->required();
  res->add_option("--column", st.res_col, "value column name")->capture_default_str();
  add_model_flags(res, st.res_model);
  res->add_option("--tol", st.res_tol, "inverse filter truncation tolerance")
      ->capture_default_str();
  res->add_option("--out", st.res_out, "output CSV path")->required();
  res->callback([] {
    const SeriesData x = load_column(st.res_in, st.res_col);
    const SeriesData z = residuals(x, st.res_model.params(), st.res_tol);
    write_series_csv(st.res_out, z, "z");
    write_sidecar(st.res_out, z.meta);
  });

  // ---- lb ----
  auto* lb = app.add_subcommand("lb", "Ljung-Box whiteness test");
  lb->add_option("input", st.lb_in, "input CSV")->required();
  lb->add_option("--column", st.lb_col, "value column name")->capture_default_str();
  lb->add_option("--lags", st.lb_lags, "number of lags H")->capture_default_str();
  lb->add_option("--fit-df", st.lb_fitdf, "degrees-of-freedom reduction for fitted parameters")
      ->capture_default_str();
  lb->add_option("--out", st.lb_out, "output JSON path (default: stdout)");
  lb->callback([] {
    const SeriesData x = load_column(st.lb_in, st.lb_col);
    const LjungBoxResult r = ljung_box(x, st.lb_lags, st.lb_fitdf);
    emit_json({{"schema", "artfima-stable/1"},
               {"report", "ljung-box"},
               {"input", st.lb_in},
               {"n", x.values.size()},
               {"lags", r.lags},
               {"df", r.df},
               {"statistic", r.statistic},
               {"p_value", r.p_value}},
              st.lb_out);
  });

  // ---- alpha ----
  auto* alp = app.add_subcommand("alpha", "McCulloch quantile estimate of the stability index");
  alp->add_option("input", st.alp_in, "input CSV")->required();
  alp->add_option("--column", st.alp_col, "value column name")->capture_default_str();
  alp->add_option("--out", st.alp_out, "output JSON path (default: stdout)");
  alp->callback([] {
    const SeriesData x = load_column(st.alp_in, st.alp_col);
    emit_json({{"schema", "artfima-stable/1"},
               {"report", "mcculloch-alpha"},
               {"input", st.alp_in},
               {"n", x.values.size()},
               {"alpha_hat", mcculloch_alpha(x.values)}},
              st.alp_out);
  });

  // ---- mc ----
  auto* mc = app.add_subcommand("mc", "Monte Carlo bias/MSE study of the Whittle estimator");
  add_model_flags(mc, st.mc_model);
  mc->add_option("--alpha", st.mc_alpha, "innovation stability index")->capture_default_str();
  mc->add_option("--sigma", st.mc_sigma, "innovation scale")->capture_default_str();
  mc->add_option("--n", st.mc_cfg.n, "length per replicate")->capture_default_str();
  mc->add_option("--replicates", st.mc_cfg.replicates, "replicate count")->capture_default_str();
  mc->add_flag("--full-scale", st.mc_full, "reference scale: n=10000, 1000 replicates");
  mc->add_option("--mc-seed", st.mc_cfg.seed, "base seed; replicate r uses stream r")
      ->capture_default_str();
  mc->add_option("--mc-threads", st.mc_cfg.threads, "replicate workers (0 = auto)")
      ->capture_default_str();
  mc->add_option("--sim-tol", st.mc_cfg.sim_tol, "simulation truncation tolerance")
      ->capture_default_str();
  add_search_flags(mc, st.mc_cfg.search);
  mc->add_option("--out", st.mc_out, "output JSON path")->required();
  mc->add_option("--estimates-csv", st.mc_est_csv, "per-replicate estimate table for auditing");
  mc->callback([] {
    st.mc_cfg.true_params = st.mc_model.params();
    st.mc_cfg.innovation.alpha = st.mc_alpha;
    st.mc_cfg.innovation.sigma = st.mc_sigma;
    st.mc_cfg.search.p = st.mc_cfg.true_params.arma.p();
    st.mc_cfg.search.q = st.mc_cfg.true_params.arma.q();
    if (st.mc_full) {
      st.mc_cfg.n = 10000;
      st.mc_cfg.replicates = 1000;
    }
    const McReport report = run_mc_study(st.mc_cfg);
    emit_json(report.to_json(), st.mc_out);
    if (!st.mc_est_csv.empty()) {
      std::vector<std::string> header{"replicate"};
      std::vector<std::vector<double>> cols(1 + report.stats.size());
      for (const ParamStats& s : report.stats) header.push_back(s.name + "_hat");
      for (std::size_t i = 0; i < report.estimates.size(); ++i) {
        cols[0].push_back(static_cast<double>(report.replicate_ids[i]));
        for (std::size_t k = 0; k < report.stats.size(); ++k)
          cols[1 + k].push_back(report.estimates[i][k]);
      }
      write_table_csv(st.mc_est_csv, header, cols);
    }
    // aligned summary table on stdout
    std::printf("%-8s %12s %12s %12s %12s %22s\n", "param", "true", "mean", "bias", "mse",
                "95% CI");
    for (const ParamStats& s : report.stats)
      std::printf("%-8s %12.5f %12.5f %12.5f %12.6f   [%9.5f, %9.5f]\n", s.name.c_str(),
                  s.true_value, s.mean, s.bias, s.mse, s.ci_lo, s.ci_hi);
    if (!report.failed.empty())
      std::printf("excluded %zu failed replicate(s) of %zu\n", report.failed.size(),
                  report.requested);
  });

  // ---- ingest ----
  auto* ing = app.add_subcommand("ingest", "merge channels and apply the transform chain");
  ing->add_option("--input", st.ing_spec.paths, "input CSV path(s)")->required();
  ing->add_option("--column", st.ing_spec.columns, "column name(s)")->required();
  ing->add_option("--merge", st.ing_merge, "merge rule: single | mean_else_max")
      ->check(CLI::IsMember({"single", "mean_else_max"}))
      ->capture_default_str();
  ing->add_option("--transform", st.ing_transforms,
                  "ordered transforms: log | demean | subseries:START:END")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            if (s == "log" || s == "demean") return {};
            unsigned long a = 0, b = 0;
            if (std::sscanf(s.c_str(), "subseries:%lu:%lu", &a, &b) == 2) return {};
            return "expected log, demean, or subseries:START:END, got '" + s + "'";
          },
          "TRANSFORM"));
  ing->add_option("--out", st.ing_out, "output CSV path")->required();
  ing->callback([] {
    st.ing_spec.merge = st.ing_merge == "single" ? MergeRule::single : MergeRule::mean_else_max;
    st.ing_spec.transforms.clear();
    for (const std::string& s : st.ing_transforms) {
      Transform tr;
      if (s == "log") {
        tr.kind = Transform::Kind::log;
      } else if (s == "demean") {
        tr.kind = Transform::Kind::demean;
      } else {
        unsigned long a = 0, b = 0;
        std::sscanf(s.c_str(), "subseries:%lu:%lu", &a, &b);
        tr.kind = Transform::Kind::subseries;
        tr.start = a;
        tr.end = b;
      }
      st.ing_spec.transforms.push_back(tr);
    }
    const SeriesData x = ingest(st.ing_spec);
    write_series_csv(st.ing_out, x);
    write_sidecar(st.ing_out, x.meta);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace artfima

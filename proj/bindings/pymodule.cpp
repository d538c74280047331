// Python bindings: a thin veneer over the C++ core. Structured results come
// back as plain dicts (converted through the JSON layer) so downstream code
// is free of binding types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "artfima/cli.hpp"
#include "artfima/codifference.hpp"
#include "artfima/diagnostics.hpp"
#include "artfima/estimate.hpp"
#include "artfima/kernel.hpp"
#include "artfima/montecarlo.hpp"
#include "artfima/simulate.hpp"
#include "artfima/spectral.hpp"
#include "artfima/stable.hpp"

namespace py = pybind11;
using namespace artfima;

namespace {

ArtfimaParams make_params(double d, double lambda, const std::vector<double>& phi,
                          const std::vector<double>& theta) {
  ArtfimaParams p;
  p.order = {d, lambda};
  p.arma.phi = phi;
  p.arma.theta = theta;
  p.validate();
  return p;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

SeriesData make_series(std::vector<double> values) {
  SeriesData s;
  s.values = std::move(values);
  return s;
}

}  // namespace

PYBIND11_MODULE(_artfima, m) {
  m.doc() = "ARTFIMA(p,d,lambda,q) time series with symmetric alpha-stable innovations";

  m.def(
      "tempered_weights",
      [](double d, double lambda, std::size_t count, bool difference) {
        return tempered_weights({d, lambda}, difference ? Sign::difference : Sign::integrate,
                                count);
      },
      py::arg("d"), py::arg("lam"), py::arg("count"), py::arg("difference") = false,
      "Tempered fractional binomial weights omega_{-d,lambda}(j), j = 0..count-1");

  m.def(
      "ma_coefficients",
      [](double d, double lambda, const std::vector<double>& phi, const std::vector<double>& theta,
         std::size_t count) { return ma_coefficients(make_params(d, lambda, phi, theta), count); },
      py::arg("d"), py::arg("lam"), py::arg("phi") = std::vector<double>{},
      py::arg("theta") = std::vector<double>{}, py::arg("count") = 100);

  m.def(
      "simulate",
      [](double d, double lambda, const std::vector<double>& phi, const std::vector<double>& theta,
         double alpha, double sigma, std::size_t n, std::uint64_t seed, std::uint64_t stream,
         double tol) {
        StableSpec spec;
        spec.alpha = alpha;
        spec.sigma = sigma;
        const SeriesData x =
            simulate_artfima(make_params(d, lambda, phi, theta), spec, n, seed, tol, stream);
        return py::make_tuple(x.values, json_to_py(x.meta));
      },
      py::arg("d"), py::arg("lam"), py::arg("phi") = std::vector<double>{},
      py::arg("theta") = std::vector<double>{}, py::arg("alpha") = 2.0, py::arg("sigma") = 1.0,
      py::arg("n") = 1000, py::arg("seed") = 42, py::arg("stream") = 0, py::arg("tol") = 1e-12,
      "Simulate a path; returns (values, meta_dict)");

  m.def(
      "sample_sas",
      [](double alpha, double sigma, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        StableSpec spec;
        spec.alpha = alpha;
        spec.sigma = sigma;
        Rng rng(seed, stream);
        return sample_sas(spec, n, rng);
      },
      py::arg("alpha") = 2.0, py::arg("sigma") = 1.0, py::arg("n") = 1000, py::arg("seed") = 42,
      py::arg("stream") = 0);

  m.def(
      "fit_whittle",
      [](const std::vector<double>& values, std::size_t p, std::size_t q, std::size_t multistarts,
         std::uint64_t seed, int threads) {
        SearchConfig sc;
        sc.p = p;
        sc.q = q;
        sc.multistarts = multistarts;
        sc.seed = seed;
        sc.threads = threads;
        const FitResult res = fit_whittle(make_series(values), sc);
        py::dict out;
        out["d"] = res.beta_hat.order.d;
        out["lam"] = res.beta_hat.order.lambda;
        out["phi"] = res.beta_hat.arma.phi;
        out["theta"] = res.beta_hat.arma.theta;
        out["sigma2"] = res.sigma2_hat;
        out["converged"] = res.converged;
        out["starts"] = res.trace.size();
        return out;
      },
      py::arg("values"), py::arg("p") = 0, py::arg("q") = 0, py::arg("multistarts") = 24,
      py::arg("seed") = 42, py::arg("threads") = 0,
      "Whittle fit of ARTFIMA(p,d,lambda,q); returns a dict of estimates");

  m.def(
      "codifference",
      [](double d, double lambda, double alpha, std::size_t max_lag) {
        return theoretical_codifference(make_params(d, lambda, {}, {}), alpha, max_lag).tau;
      },
      py::arg("d"), py::arg("lam"), py::arg("alpha") = 2.0, py::arg("max_lag") = 100,
      "Theoretical co-difference tau(0..max_lag)");

  m.def(
      "periodogram",
      [](const std::vector<double>& values) {
        const Periodogram pg = self_normalized_periodogram(make_series(values));
        return py::make_tuple(pg.freqs, pg.ordinates);
      },
      py::arg("values"), "Self-normalized periodogram; returns (freqs, ordinates)");

  m.def(
      "residuals",
      [](const std::vector<double>& values, double d, double lambda,
         const std::vector<double>& phi, const std::vector<double>& theta, double tol) {
        return artfima::residuals(make_series(values), make_params(d, lambda, phi, theta), tol)
            .values;
      },
      py::arg("values"), py::arg("d"), py::arg("lam"), py::arg("phi") = std::vector<double>{},
      py::arg("theta") = std::vector<double>{}, py::arg("tol") = 1e-12);

  m.def(
      "ljung_box",
      [](const std::vector<double>& values, std::size_t lags, std::size_t fit_df) {
        const LjungBoxResult r = ljung_box(make_series(values), lags, fit_df);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("values"), py::arg("lags") = 20, py::arg("fit_df") = 0);

  m.def(
      "mcculloch_alpha",
      [](const std::vector<double>& values) { return mcculloch_alpha(values); },
      py::arg("values"), "Quantile-ratio estimate of the stability index");

  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return run_cli(args); },
      py::arg("args"), "Invoke the command-line interface in-process");
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "artfima/stable.hpp"

using namespace artfima;

namespace {

double sample_variance(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

// two-sample Kolmogorov-Smirnov distance
double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double dmax = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    dmax = std::max(dmax, std::abs(fa - fb));
  }
  return dmax;
}

}  // namespace

TEST_CASE("sampling is deterministic per seed and stream") {
  StableSpec spec;
  spec.alpha = 1.3;
  const SeriesData a = sample_sas_series(spec, 1000, 7, 0);
  const SeriesData b = sample_sas_series(spec, 1000, 7, 0);
  CHECK(a.values == b.values);

  const SeriesData c = sample_sas_series(spec, 1000, 7, 1);
  CHECK(a.values != c.values);
  const SeriesData d = sample_sas_series(spec, 1000, 8, 0);
  CHECK(a.values != d.values);
}

TEST_CASE("gaussian branch has variance two") {
  StableSpec spec;  // alpha = 2, sigma = 1
  const SeriesData x = sample_sas_series(spec, 100000, 11, 0);
  const double v = sample_variance(x.values);
  CHECK(v > 1.9);
  CHECK(v < 2.1);
}

TEST_CASE("empirical characteristic function matches exp(-|theta|^alpha)") {
  const std::vector<double> thetas{0.5, 1.0};
  for (double alpha : {0.7, 1.0, 1.3}) {
    StableSpec spec;
    spec.alpha = alpha;
    const SeriesData x = sample_sas_series(spec, 100000, 23, 0);
    const std::vector<double> cf = empirical_cf(x.values, thetas);
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const double target = std::exp(-std::pow(thetas[k], alpha));
      CAPTURE(alpha);
      CAPTURE(thetas[k]);
      CHECK(std::abs(cf[k] - target) < 0.02);
    }
  }
}

TEST_CASE("empirical cf basics") {
  std::vector<double> x{1.5, -0.3, 2.0};
  CHECK(empirical_cf(x, std::vector<double>{0.0})[0] == 1.0);

  std::vector<double> constant(50, 0.8);
  CHECK(empirical_cf(constant, std::vector<double>{1.3})[0] == doctest::Approx(std::cos(1.3 * 0.8)).epsilon(1e-15));

  StableSpec gauss;
  const SeriesData g = sample_sas_series(gauss, 100000, 5, 0);
  CHECK(std::abs(empirical_cf(g.values, std::vector<double>{1.0})[0] - std::exp(-1.0)) < 0.02);

  CHECK_THROWS_WITH_AS(empirical_cf(std::vector<double>{}, std::vector<double>{1.0}),
                       doctest::Contains("empty-request"), std::invalid_argument);
}

TEST_CASE("law is symmetric under sign flip") {
  StableSpec spec;
  spec.alpha = 1.3;
  const SeriesData a = sample_sas_series(spec, 100000, 31, 0);
  SeriesData b = sample_sas_series(spec, 100000, 31, 1);
  for (double& v : b.values) v = -v;
  CHECK(ks_distance(a.values, b.values) < 0.02);
}

TEST_CASE("scale acts multiplicatively on a shared seed") {
  StableSpec unit;
  unit.alpha = 0.9;
  StableSpec scaled = unit;
  scaled.sigma = 3.0;
  const SeriesData a = sample_sas_series(unit, 500, 13, 2);
  const SeriesData b = sample_sas_series(scaled, 500, 13, 2);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[i] == 3.0 * a.values[i]);
}

TEST_CASE("tail frequencies decay at the stable rate") {
  for (double alpha : {0.7, 1.3}) {
    StableSpec spec;
    spec.alpha = alpha;
    const SeriesData x = sample_sas_series(spec, 1000000, 41, 0);
    // log-log regression of P(|Z| > x) on x over [10, 100]
    std::vector<double> xs, lx, lp;
    for (double t = 10.0; t <= 100.0; t *= std::pow(10.0, 0.25)) xs.push_back(t);
    for (double t : xs) {
      std::size_t count = 0;
      for (double v : x.values)
        if (std::abs(v) > t) ++count;
      REQUIRE(count > 0);
      lx.push_back(std::log(t));
      lp.push_back(std::log(static_cast<double>(count) / 1e6));
    }
    double mx = 0, mp = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      mp += lp[i];
    }
    mx /= static_cast<double>(lx.size());
    mp /= static_cast<double>(lx.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      num += (lx[i] - mx) * (lp[i] - mp);
      den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = num / den;
    CAPTURE(alpha);
    CHECK(std::abs(slope + alpha) < 0.3);
  }
}

TEST_CASE("alpha values within 1e-8 of one snap to the cauchy branch") {
  StableSpec exact;
  exact.alpha = 1.0;
  StableSpec near;
  near.alpha = 1.0 + 1e-9;
  const SeriesData a = sample_sas_series(exact, 200, 3, 0);
  const SeriesData b = sample_sas_series(near, 200, 3, 0);
  CHECK(a.values == b.values);
}

TEST_CASE("spec validation") {
  StableSpec bad;
  bad.alpha = 0.0;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("invalid-stable"),
                       std::invalid_argument);
  bad.alpha = 2.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.alpha = 1.5;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

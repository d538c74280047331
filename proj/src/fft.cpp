#include "artfima/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace artfima {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on distinct
// plans is. Monte Carlo workers hit this concurrently.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct PlanGuard {
  fftw_plan plan = nullptr;
  ~PlanGuard() {
    if (plan) {
      std::lock_guard<std::mutex> lock(plan_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("empty-request: rfft input is empty");
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  PlanGuard g;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    g.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                  reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  if (!g.plan) throw std::runtime_error("fft-failure: could not create r2c plan");
  fftw_execute(g.plan);
  return out;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t full = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < full) n <<= 1;

  std::vector<double> fa(n, 0.0), fb(n, 0.0);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());

  std::vector<std::complex<double>> ca(n / 2 + 1), cb(n / 2 + 1);
  PlanGuard pa, pb, pinv;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    pa.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), fa.data(),
                                   reinterpret_cast<fftw_complex*>(ca.data()), FFTW_ESTIMATE);
    pb.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), fb.data(),
                                   reinterpret_cast<fftw_complex*>(cb.data()), FFTW_ESTIMATE);
  }
  if (!pa.plan || !pb.plan) throw std::runtime_error("fft-failure: could not create r2c plan");
  fftw_execute(pa.plan);
  fftw_execute(pb.plan);

  for (std::size_t k = 0; k < ca.size(); ++k) ca[k] *= cb[k];

  std::vector<double> out(n);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    pinv.plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(ca.data()), out.data(),
                                     FFTW_ESTIMATE);
  }
  if (!pinv.plan) throw std::runtime_error("fft-failure: could not create c2r plan");
  fftw_execute(pinv.plan);

  out.resize(full);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace artfima

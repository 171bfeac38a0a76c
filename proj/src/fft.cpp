// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "sarrfi/parallel.hpp"

namespace sarrfi {
namespace {

// Planner calls are not thread safe; execution of a finished plan is.
std::mutex g_planner;

void ensure_threads() {
  static const bool ok = fftw_init_threads() != 0;
  (void)ok;
}

// Runs `howmany` strided transforms of length n on data in place and scales by 1/sqrt(n).
void run(cdouble* data, int n, int howmany, int stride, int dist, FftDir dir) {
  if (n == 0 || howmany == 0) return;
  fftw_plan plan;
  {
    std::lock_guard lock(g_planner);
    ensure_threads();
    fftw_plan_with_nthreads(threads());
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr, stride,
                              dist, dir == FftDir::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error(Errc::non_finite, "fft: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(g_planner);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(howmany);
  if (stride == 1 && dist == n) {
    for (std::size_t k = 0; k < total; ++k) data[k] *= scale;
  } else {
    for (int h = 0; h < howmany; ++h) {
      for (int k = 0; k < n; ++k) data[static_cast<std::size_t>(h) * dist +
                                      static_cast<std::size_t>(k) * stride] *= scale;
    }
  }
}

}  // namespace

void fft(std::span<cdouble> x, FftDir dir) {
  run(x.data(), static_cast<int>(x.size()), 1, 1, static_cast<int>(x.size()), dir);
}

void fft_rows(ComplexMatrix& m, FftDir dir) {
  const int cols = static_cast<int>(m.cols());
  run(m.data().data(), cols, static_cast<int>(m.rows()), 1, cols, dir);
}

void fft_cols(ComplexMatrix& m, FftDir dir) {
  run(m.data().data(), static_cast<int>(m.rows()), static_cast<int>(m.cols()),
      static_cast<int>(m.cols()), 1, dir);
}

std::vector<double> fft_frequencies(std::size_t n, double rate) {
  std::vector<double> f(n);
  const double df = rate / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<std::ptrdiff_t>(k);
    const auto nn = static_cast<std::ptrdiff_t>(n);
    f[k] = static_cast<double>(2 * kk < nn ? kk : kk - nn) * df;
  }
  return f;
}

}  // namespace sarrfi

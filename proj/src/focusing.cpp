// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/focusing.hpp"

#include <cmath>

#include "sarrfi/fft.hpp"
#include "sarrfi/parallel.hpp"

namespace sarrfi {
namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

const char* to_string(FocusStage stage) {
  switch (stage) {
    case FocusStage::wavenumber: return "wavenumber";
    case FocusStage::reference: return "reference";
    case FocusStage::range_doppler: return "rangedoppler";
    case FocusStage::azimuth_filter: return "azimuth-filter";
  }
  return "unknown";
}

double d_factor(double f_eta, const RadarConfig& cfg) {
  const double x = kSpeedOfLight * f_eta / (2.0 * cfg.V * cfg.f0);
  const double arg = 1.0 - x * x;
  if (!(arg > 0.0)) throw Error(Errc::domain_error, "d_factor: |f_eta| >= 2 V f0 / c");
  return std::sqrt(arg);
}

cdouble lfm_spectrum(double K, double Tdur, double f) {
  if (K == 0.0) throw Error(Errc::invalid_argument, "lfm_spectrum: K must be nonzero");
  if (std::abs(f) > std::abs(K * Tdur) / 2.0) return {0.0, 0.0};
  return std::polar(1.0, -kPi * f * f / K);
}

FocusPlan make_focus_plan(const RadarConfig& cfg) {
  cfg.validate();
  FocusPlan plan;
  plan.cfg = cfg;
  const double fdc = cfg.doppler_centroid();
  plan.f_eta_grid = fft_frequencies(cfg.N_a, cfg.prf);
  for (auto& f : plan.f_eta_grid) {
    double w = std::fmod(f - fdc + cfg.prf / 2.0, cfg.prf);
    if (w < 0.0) w += cfg.prf;
    f = fdc + w - cfg.prf / 2.0;
  }
  plan.f_tau_grid = fft_frequencies(cfg.N_r, cfg.f_s);
  const Grid img = image_grid(cfg);
  plan.R0_grid.resize(cfg.N_r);
  for (std::size_t n = 0; n < cfg.N_r; ++n) {
    plan.R0_grid[n] = cfg.R_ref + kSpeedOfLight * img.tau.at(static_cast<double>(n)) / 2.0;
  }
  return plan;
}

ComplexMatrix focus_omegak(const ComplexMatrix& raw, const RadarConfig& cfg_in,
                           const FocusHook& hook) {
  if (raw.domain() != DomainTag::raw) {
    throw Error(Errc::bad_domain, std::string("focus: expected raw data, got ") + to_string(raw.domain()));
  }
  RadarConfig cfg = cfg_in;
  if (raw.rows() != cfg.N_a || raw.cols() != cfg.N_r) {
    throw Error(Errc::shape_mismatch, "focus: raw matrix shape differs from N_a x N_r");
  }
  if (!close(raw.axis_eta().step, 1.0 / cfg.prf) || !close(raw.axis_tau().step, 1.0 / cfg.f_s)) {
    throw Error(Errc::shape_mismatch, "focus: raw axis steps differ from 1/prf and 1/f_s");
  }
  // The data's own time origins take precedence over the configured ones.
  cfg.eta0 = raw.axis_eta().start;
  cfg.tau0 = raw.axis_tau().start;
  const FocusPlan plan = make_focus_plan(cfg);

  const std::size_t Na = cfg.N_a;
  const std::size_t Nr = cfg.N_r;
  const double c = kSpeedOfLight;
  const double fdc = cfg.doppler_centroid();
  const double eta0 = cfg.eta0;
  const double tau0 = cfg.tau0;
  const Grid img_grid = image_grid(cfg);
  const double tau_img0 = img_grid.tau.start;

  ComplexMatrix S = raw;
  fft_rows(S, FftDir::forward);
  fft_cols(S, FftDir::forward);
  S.set_domain(DomainTag::wavenumber);

  // Time-origin phases of the DFT, so the spectrum refers to eta = 0 and tau = 0.
  std::vector<cdouble> shift_tau(Nr);
  for (std::size_t n = 0; n < Nr; ++n) {
    shift_tau[n] = std::polar(1.0, -2.0 * kPi * plan.f_tau_grid[n] * tau0);
  }
  parallel_for(Na, [&](std::size_t m) {
    const cdouble se = std::polar(1.0, -2.0 * kPi * plan.f_eta_grid[m] * eta0);
    auto line = S.row(m);
    for (std::size_t n = 0; n < Nr; ++n) line[n] *= se * shift_tau[n];
  });
  if (hook) hook(FocusStage::wavenumber, S);

  // Reference function with the exact square root, plus the processed-band gate.
  const double a = 4.0 * kPi * cfg.R_ref / c;
  const double b = c * c / (4.0 * cfg.V * cfg.V);
  parallel_for(Na, [&](std::size_t m) {
    const double fe = plan.f_eta_grid[m];
    auto line = S.row(m);
    if (std::abs(fe - fdc) > cfg.B_p / 2.0) {
      std::fill(line.begin(), line.end(), cdouble{});
      return;
    }
    for (std::size_t n = 0; n < Nr; ++n) {
      const double ft = plan.f_tau_grid[n];
      const double fc = cfg.f0 + ft;
      const double theta = a * std::sqrt(fc * fc - b * fe * fe) + kPi * ft * ft / cfg.K_r;
      line[n] *= std::polar(1.0, theta);
    }
  });
  if (hook) hook(FocusStage::reference, S);

  // Reference the range inverse transform to the image time origin.
  for (std::size_t n = 0; n < Nr; ++n) {
    shift_tau[n] = std::polar(1.0, 2.0 * kPi * plan.f_tau_grid[n] * tau_img0);
  }
  parallel_for(Na, [&](std::size_t m) {
    auto line = S.row(m);
    for (std::size_t n = 0; n < Nr; ++n) line[n] *= shift_tau[n];
  });
  fft_rows(S, FftDir::inverse);
  S.set_domain(DomainTag::range_doppler);
  if (hook) hook(FocusStage::range_doppler, S);

  // Per-gate azimuth matched filter, then restore the azimuth time origin.
  parallel_for(Na, [&](std::size_t m) {
    const double fe = plan.f_eta_grid[m];
    const double D = d_factor(fe, cfg);
    const cdouble se = std::polar(1.0, 2.0 * kPi * fe * eta0);
    auto line = S.row(m);
    for (std::size_t n = 0; n < Nr; ++n) {
      const double theta = 4.0 * kPi * (plan.R0_grid[n] - cfg.R_ref) / c * cfg.f0 * D;
      line[n] *= se * std::polar(1.0, theta);
    }
  });
  if (hook) hook(FocusStage::azimuth_filter, S);

  fft_cols(S, FftDir::inverse);
  S.set_domain(DomainTag::image);
  S.set_axes(img_grid.eta, img_grid.tau);
  return S;
}

}  // namespace sarrfi

// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/artefact_model.hpp"

#include <cmath>

#include "sarrfi/focusing.hpp"
#include "sarrfi/parallel.hpp"

namespace sarrfi {
namespace {

void check(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  cfg.validate();
  icfg.validate(cfg);
}

// Azimuth time (relative to the pulse) at which the exact gate argument equals f.
double gate_time(const RadarConfig& cfg, double K_a, double f) {
  return f / (K_a * d_factor(f, cfg));
}

double constant_phase(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  const double f_i = cfg.f0 + icfg.f_i0;
  return -4.0 * kPi * icfg.R_i * (f_i - icfg.f_i0) / kSpeedOfLight -
         kPi * icfg.f_i0 * icfg.f_i0 / icfg.K_i;
}

double range_support(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  return std::abs((cfg.K_r - icfg.K_i) / cfg.K_r) * icfg.T_i;
}

}  // namespace

double doppler_rate(const RadarConfig& cfg, double R0) {
  return 2.0 * cfg.V * cfg.V * cfg.f0 / (kSpeedOfLight * R0);
}

double k_i_prime(double K_r, double K_i) {
  if (std::abs(K_r - K_i) <= 1e-12 * std::max(std::abs(K_r), std::abs(K_i))) {
    throw Error(Errc::sinc_mode, "K_r == K_i: the compressed interference is a sinc line");
  }
  return K_i * K_r / (K_r - K_i);
}

DerivedRates derived_rates(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  return {doppler_rate(cfg, icfg.R_i), doppler_rate(cfg, cfg.R_ref), k_i_prime(cfg.K_r, icfg.K_i)};
}

double interference_pulse_time(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  return cfg.eta0 + static_cast<double>(icfg.pulse_index) / cfg.prf;
}

double artefact_range_centre(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  const double D = d_factor(cfg.doppler_centroid(), cfg);
  return 2.0 * (icfg.R_i / kSpeedOfLight - cfg.R_ref / (kSpeedOfLight * D)) - icfg.f_i0 / cfg.K_r;
}

double artefact_range_vertex(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  const double D = d_factor(cfg.doppler_centroid(), cfg);
  return 2.0 * (icfg.R_i / kSpeedOfLight - cfg.R_ref / (kSpeedOfLight * D)) - icfg.f_i0 / icfg.K_i;
}

ArtefactFootprint predict_footprint(const RadarConfig& cfg, const InterferenceConfig& icfg,
                                    const std::optional<Grid>& grid) {
  check(cfg, icfg);
  const DerivedRates rates = derived_rates(cfg, icfg);
  const double fdc = cfg.doppler_centroid();
  const double eta_p = interference_pulse_time(cfg, icfg);

  ArtefactFootprint fp;
  fp.eta_i = eta_p + gate_time(cfg, rates.K_a, fdc);
  fp.eta_start = eta_p + gate_time(cfg, rates.K_a, fdc - cfg.B_p / 2.0);
  fp.eta_end = eta_p + gate_time(cfg, rates.K_a, fdc + cfg.B_p / 2.0);
  fp.d_eta = fp.eta_end - fp.eta_start;
  fp.d_eta_approx = cfg.B_p / rates.K_a;
  fp.tau_i = artefact_range_centre(cfg, icfg);
  fp.d_tau = range_support(cfg, icfg);
  fp.tau_start = fp.tau_i - fp.d_tau / 2.0;
  fp.tau_end = fp.tau_i + fp.d_tau / 2.0;

  if (grid) {
    PixelFootprint px;
    px.row_center = grid->eta.index_of(fp.eta_i);
    px.col_center = grid->tau.index_of(fp.tau_i);
    px.row_start = grid->eta.index_of(fp.eta_start);
    px.row_end = grid->eta.index_of(fp.eta_end);
    px.col_start = grid->tau.index_of(fp.tau_start);
    px.col_end = grid->tau.index_of(fp.tau_end);
    px.row_extent = fp.d_eta / grid->eta.step;
    px.col_extent = fp.d_tau / grid->tau.step;
    fp.px = px;
  }
  return fp;
}

ComplexMatrix artefact_closed_form(const RadarConfig& cfg, const InterferenceConfig& icfg,
                                   const Grid& grid, const ClosedFormOptions& opts) {
  check(cfg, icfg);
  const DerivedRates rates = derived_rates(cfg, icfg);
  const double K_a = opts.K_a.value_or(rates.K_a);
  const double R0 = icfg.R_i;
  const double fdc = cfg.doppler_centroid();
  const double eta_p = interference_pulse_time(cfg, icfg);
  const double tau_c = artefact_range_centre(cfg, icfg);
  const double tau_v = artefact_range_vertex(cfg, icfg);
  const double half_tau = range_support(cfg, icfg) / 2.0;
  const double a = 2.0 * cfg.V * cfg.V * cfg.f0 / kSpeedOfLight;
  const double phase0 = 4.0 * kPi * R0 * cfg.f0 / kSpeedOfLight + constant_phase(cfg, icfg);

  ComplexMatrix out(grid, DomainTag::image);
  if (icfg.gamma_i == cdouble{}) return out;

  std::vector<cdouble> v(grid.cols);
  for (std::size_t n = 0; n < grid.cols; ++n) {
    const double tau = grid.tau.at(static_cast<double>(n));
    if (std::abs(tau - tau_c) > half_tau) continue;
    const double t = tau - tau_v;
    v[n] = std::polar(1.0, kPi * rates.K_i_prime * t * t);
  }
  parallel_for(grid.rows, [&](std::size_t m) {
    const double eta = grid.eta.at(static_cast<double>(m)) - eta_p;
    const double f = opts.exact_gate
                         ? a * eta / std::sqrt(R0 * R0 + cfg.V * cfg.V * eta * eta)
                         : K_a * eta;
    if (std::abs(f - fdc) > cfg.B_p / 2.0) return;
    const cdouble ue = icfg.gamma_i * std::polar(1.0, kPi * K_a * eta * eta + phase0);
    auto line = out.row(m);
    for (std::size_t n = 0; n < grid.cols; ++n) line[n] = ue * v[n];
  });
  return out;
}

Rank1Factors rank1_model(const RadarConfig& cfg, const InterferenceConfig& icfg, const Grid& grid) {
  check(cfg, icfg);
  const DerivedRates rates = derived_rates(cfg, icfg);
  const double fdc = cfg.doppler_centroid();
  const double eta_p = interference_pulse_time(cfg, icfg);
  const double tau_c = artefact_range_centre(cfg, icfg);
  const double tau_v = artefact_range_vertex(cfg, icfg);
  const double half_tau = range_support(cfg, icfg) / 2.0;
  const double C = constant_phase(cfg, icfg);
  const double range_phase = 4.0 * kPi * icfg.R_i * cfg.f0 / kSpeedOfLight;

  Rank1Factors f;
  f.u.assign(grid.rows, cdouble{});
  f.v.assign(grid.cols, cdouble{});
  for (std::size_t m = 0; m < grid.rows; ++m) {
    const double eta = grid.eta.at(static_cast<double>(m)) - eta_p;
    if (std::abs(rates.K_a_ref * eta - fdc) > cfg.B_p / 2.0) continue;
    f.u[m] = std::polar(1.0, kPi * rates.K_a_ref * eta * eta + C);
  }
  for (std::size_t n = 0; n < grid.cols; ++n) {
    const double tau = grid.tau.at(static_cast<double>(n));
    if (std::abs(tau - tau_c) > half_tau) continue;
    const double t = tau - tau_v;
    f.v[n] = std::polar(1.0, kPi * rates.K_i_prime * t * t + range_phase);
  }
  return f;
}

ComplexMatrix outer_product(const Rank1Factors& f, cdouble gamma, const Grid& grid) {
  if (f.u.size() != grid.rows || f.v.size() != grid.cols) {
    throw Error(Errc::shape_mismatch, "outer_product: factor lengths differ from grid");
  }
  ComplexMatrix out(grid, DomainTag::image);
  for (std::size_t m = 0; m < grid.rows; ++m) {
    if (f.u[m] == cdouble{}) continue;
    const cdouble um = gamma * f.u[m];
    auto line = out.row(m);
    for (std::size_t n = 0; n < grid.cols; ++n) line[n] = um * f.v[n];
  }
  return out;
}

long long taylor_rank_bound(int n) {
  if (n < 1) throw Error(Errc::invalid_argument, "taylor_rank_bound: n must be >= 1");
  long long total = 0;
  for (int p = 1; p <= n; ++p) {
    long long binom = 1;  // C(p, 0)
    for (int q = 0; q <= p; ++q) {
      total += binom;
      binom = binom * (p - q) / (q + 1);
    }
  }
  return total;
}

}  // namespace sarrfi

// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "sarrfi/log.hpp"
#include "sarrfi/parallel.hpp"

namespace sarrfi {
namespace {

// Sample indices [lo, hi) whose time lies within centre +- half_width.
std::pair<std::size_t, std::size_t> support(const Axis& tau, std::size_t n, double centre,
                                            double half_width) {
  const double a = std::ceil(tau.index_of(centre - half_width) - 1e-9);
  const double b = std::floor(tau.index_of(centre + half_width) + 1e-9);
  const double lo = std::clamp(a, 0.0, static_cast<double>(n));
  const double hi = std::clamp(b + 1.0, 0.0, static_cast<double>(n));
  if (hi <= lo) return {0, 0};
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

void check_raw(const ComplexMatrix& raw, const RadarConfig& cfg) {
  if (raw.domain() != DomainTag::raw) {
    throw Error(Errc::bad_domain, std::string("expected raw data, got ") + to_string(raw.domain()));
  }
  if (raw.rows() != cfg.N_a || raw.cols() != cfg.N_r) {
    throw Error(Errc::shape_mismatch, "raw matrix shape differs from N_a x N_r");
  }
}

}  // namespace

double instantaneous_doppler(const PointScatterer& s, const RadarConfig& cfg, double eta) {
  const double dx = s.x0 - cfg.V * eta;
  const double R = std::sqrt(dx * dx + s.R0 * s.R0);
  return 2.0 * cfg.V * dx / (cfg.wavelength() * R);
}

ComplexMatrix simulate_echo(const Scene& scene, const RadarConfig& cfg) {
  cfg.validate();
  for (const auto& s : scene.scatterers) {
    if (!(s.R0 > 0.0) || !std::isfinite(s.x0)) {
      throw Error(Errc::invalid_config, "scene: scatterer needs R0 > 0 and finite x0");
    }
  }
  ComplexMatrix out(raw_grid(cfg), DomainTag::raw);
  const Axis eta_axis = out.axis_eta();
  const Axis tau_axis = out.axis_tau();
  const double fdc = cfg.doppler_centroid();
  const double half_band = cfg.B_p / 2.0;

  std::vector<std::atomic<std::size_t>> hits(scene.scatterers.size());
  parallel_for(cfg.N_a, [&](std::size_t m) {
    const double eta = eta_axis.at(static_cast<double>(m));
    auto line = out.row(m);
    for (std::size_t k = 0; k < scene.scatterers.size(); ++k) {
      const auto& s = scene.scatterers[k];
      if (std::abs(instantaneous_doppler(s, cfg, eta) - fdc) > half_band) continue;
      const double dx = cfg.V * eta - s.x0;
      const double R = std::sqrt(dx * dx + s.R0 * s.R0);
      const double delay = 2.0 * R / kSpeedOfLight;
      const auto [lo, hi] = support(tau_axis, cfg.N_r, delay, cfg.T / 2.0);
      if (lo == hi) continue;
      const cdouble carrier = s.gamma0 * std::polar(1.0, -4.0 * kPi * cfg.f0 * R / kSpeedOfLight);
      for (std::size_t n = lo; n < hi; ++n) {
        const double t = tau_axis.at(static_cast<double>(n)) - delay;
        line[n] += carrier * std::polar(1.0, kPi * cfg.K_r * t * t);
      }
      hits[k].fetch_add(hi - lo, std::memory_order_relaxed);
    }
  });

  for (std::size_t k = 0; k < hits.size(); ++k) {
    if (hits[k].load() == 0) {
      std::ostringstream msg;
      msg << "scatterer " << k << " (x0=" << scene.scatterers[k].x0
          << ", R0=" << scene.scatterers[k].R0 << ") is never illuminated within the grid";
      log::warn("simulator", msg.str());
    }
  }
  return out;
}

ComplexMatrix inject_interference(ComplexMatrix raw, const RadarConfig& cfg,
                                  const InterferenceConfig& icfg) {
  cfg.validate();
  icfg.validate(cfg);
  check_raw(raw, cfg);
  const Axis tau_axis = raw.axis_tau();
  const double delay = 2.0 * icfg.R_i / kSpeedOfLight;
  const auto [lo, hi] = support(tau_axis, raw.cols(), delay, icfg.T_i / 2.0);
  if (lo == hi) {
    throw Error(Errc::empty_support, "interference pulse lies outside the sampled range window");
  }
  if (icfg.gamma_i == cdouble{}) return raw;

  const double f_i = cfg.f0 + icfg.f_i0;
  const cdouble carrier = icfg.gamma_i * std::polar(1.0, -4.0 * kPi * f_i * icfg.R_i / kSpeedOfLight);
  auto line = raw.row(icfg.pulse_index);
  for (std::size_t n = lo; n < hi; ++n) {
    const double tau = tau_axis.at(static_cast<double>(n));
    const double t = tau - delay;
    const double phase = kPi * icfg.K_i * t * t + 2.0 * kPi * icfg.f_i0 * tau;
    line[n] += carrier * std::polar(1.0, phase);
  }
  return raw;
}

}  // namespace sarrfi

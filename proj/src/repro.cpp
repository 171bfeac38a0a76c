// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/repro.hpp"

#include <cmath>
#include <cstdio>

#include "sarrfi/artefact_model.hpp"
#include "sarrfi/focusing.hpp"
#include "sarrfi/log.hpp"
#include "sarrfi/matrix_io.hpp"
#include "sarrfi/simulator.hpp"
#include "sarrfi/svd.hpp"

namespace sarrfi {

RadarConfig profile_radar(const ReferenceProfile& p, double squint_deg) {
  RadarConfig cfg;
  cfg.f0 = p.f0;
  cfg.K_r = p.K_r;
  cfg.T = p.T;
  cfg.V = p.V;
  cfg.B_p = p.B_p;
  cfg.prf = p.prf;
  cfg.f_s = p.f_s;
  cfg.R_ref = p.R_ref;
  cfg.squint_deg = squint_deg;
  cfg.N_a = p.N_a;
  cfg.N_r = p.N_r;
  center_windows(cfg);
  cfg.validate();
  return cfg;
}

InterferenceConfig profile_interference(const ReferenceProfile& p, const RadarConfig& cfg) {
  InterferenceConfig icfg;
  icfg.K_i = p.K_i;
  icfg.T_i = p.T_i;
  icfg.f_i0 = 0.0;
  icfg.R_i = cfg.R_ref;
  icfg.gamma_i = {1.0, 0.0};
  icfg.pulse_index = cfg.N_a / 2;
  icfg.validate(cfg);
  return icfg;
}

ComplexMatrix simulate_focused_artefact(const RadarConfig& cfg, const InterferenceConfig& icfg) {
  ComplexMatrix raw(raw_grid(cfg), DomainTag::raw);
  raw = inject_interference(std::move(raw), cfg, icfg);
  return focus_omegak(raw, cfg);
}

ReproReport repro(const ReferenceProfile& profile, const ReproOptions& opts) {
  ReproReport report;
  report.seed = opts.seed;
  report.profile = profile;
  for (double squint : profile.squints_deg) {
    const RadarConfig cfg = profile_radar(profile, squint);
    const InterferenceConfig icfg = profile_interference(profile, cfg);
    const ComplexMatrix img = simulate_focused_artefact(cfg, icfg);
    if (opts.artefact_dir) {
      char name[64];
      std::snprintf(name, sizeof name, "image_%+.2f.sarc", squint);
      write_matrix(img, *opts.artefact_dir / name);
    }

    ReproEntry e;
    e.squint_deg = squint;
    e.predicted = predict_footprint(cfg, icfg, img.grid());
    e.measured = measure_support(img, 20.0);
    e.measured_6db = measure_support(img, 6.0);

    const std::size_t k = std::min(opts.k_max, std::min(img.rows(), img.cols()));
    const SvdResult d = truncated_svd(to_eigen(img), k, opts.seed);
    const auto curve = rank_error_curve(d.sigma, img.frobenius_norm_sq(), k);
    for (const auto& [kk, err] : curve) e.rank_k_errors.push_back(err);
    e.rank1_error = e.rank_k_errors.front();
    e.sigma_head = d.sigma;
    log::info("repro", "squint " + std::to_string(squint) + " deg: rank1_error=" +
                           std::to_string(e.rank1_error));
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace {

Json box_json(const SupportBox& b) {
  return Json{{"row_min", b.row_min},           {"row_max", b.row_max},
              {"col_min", b.col_min},           {"col_max", b.col_max},
              {"centroid_row", b.centroid_row}, {"centroid_col", b.centroid_col},
              {"count", b.count}};
}

}  // namespace

Json to_json(const ReproReport& r) {
  const ReferenceProfile& p = r.profile;
  Json profile{{"f0", p.f0},   {"K_r", p.K_r}, {"T", p.T},         {"V", p.V},
               {"B_p", p.B_p}, {"R_ref", p.R_ref}, {"K_i", p.K_i}, {"T_i", p.T_i},
               {"prf", p.prf}, {"f_s", p.f_s}, {"squints_deg", p.squints_deg}};
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"squint_deg", e.squint_deg},
                       {"predicted", to_json(e.predicted)},
                       {"measured_box", box_json(e.measured)},
                       {"measured_box_6db", box_json(e.measured_6db)},
                       {"rank1_error", e.rank1_error},
                       {"rank_k_errors", e.rank_k_errors},
                       {"sigma_head", e.sigma_head}});
  }
  return Json{{"environment", {{"seed", r.seed}, {"rng", "mt19937_64"},
                               {"grid", {{"N_a", p.N_a}, {"N_r", p.N_r}}}}},
              {"profile", profile},
              {"entries", entries}};
}

}  // namespace sarrfi

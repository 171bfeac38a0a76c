// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

struct DerivedRates {
  double K_a = 0.0;        ///< Doppler FM rate at R_i [Hz/s]
  double K_a_ref = 0.0;    ///< Doppler FM rate at R_ref [Hz/s]
  double K_i_prime = 0.0;  ///< range FM rate of the compressed interference [Hz/s]
};

/// 2 V^2 f0 / (c R0).
double doppler_rate(const RadarConfig& cfg, double R0);

/// K_i K_r / (K_r - K_i). Throws Errc::sinc_mode when K_r == K_i.
double k_i_prime(double K_r, double K_i);

DerivedRates derived_rates(const RadarConfig& cfg, const InterferenceConfig& icfg);

/// Azimuth time of the interfering pulse, eta0 + pulse_index / prf.
double interference_pulse_time(const RadarConfig& cfg, const InterferenceConfig& icfg);

/// Centre of the range support of the artefact relative to 2 R_ref / c.
double artefact_range_centre(const RadarConfig& cfg, const InterferenceConfig& icfg);
/// Range time at which the compressed artefact has zero instantaneous frequency.
double artefact_range_vertex(const RadarConfig& cfg, const InterferenceConfig& icfg);

/// Image-domain centre and extent of the artefact. Azimuth times are
/// absolute (the pulse time is included); range times are relative to
/// 2 R_ref / c, matching image_grid(). When `grid` is given, pixel
/// coordinates on that grid are attached.
ArtefactFootprint predict_footprint(const RadarConfig& cfg, const InterferenceConfig& icfg,
                                    const std::optional<Grid>& grid = std::nullopt);

struct ClosedFormOptions {
  /// Overrides the Doppler FM rate used in the azimuth phase.
  std::optional<double> K_a;
  /// false replaces the exact azimuth gate by the linear one, rect((K_a eta - f_etac)/B_p).
  bool exact_gate = true;
};

/// Two-dimensional LFM approximation of the focused artefact on `grid`.
ComplexMatrix artefact_closed_form(const RadarConfig& cfg, const InterferenceConfig& icfg,
                                   const Grid& grid, const ClosedFormOptions& opts = {});

struct Rank1Factors {
  std::vector<cdouble> u;  ///< azimuth factor, one entry per row
  std::vector<cdouble> v;  ///< range factor, one entry per column
};

/// Separable factors of the artefact with K_a frozen at R_ref.
Rank1Factors rank1_model(const RadarConfig& cfg, const InterferenceConfig& icfg, const Grid& grid);

/// gamma * u v^T on `grid`.
ComplexMatrix outer_product(const Rank1Factors& f, cdouble gamma, const Grid& grid);

/// sum_{p=1..n} sum_{q=0..p} C(p, q). Throws Errc::invalid_argument for n < 1.
long long taylor_rank_bound(int n);

}  // namespace sarrfi

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sarrfi/analysis.hpp"
#include "sarrfi/config_io.hpp"
#include "sarrfi/types.hpp"

namespace sarrfi {

/// Reference simulation profile: C-band platform, 4096 x 2048 grid.
struct ReferenceProfile {
  double f0 = 5.4e9;
  double K_r = 5e11;
  double T = 4e-5;
  double V = 7100.0;
  double B_p = 1200.0;
  double R_ref = 850e3;
  double K_i = -2.5e11;
  double T_i = 1.65e-5;
  std::vector<double> squints_deg{0.6, 0.0, -0.6};
  std::size_t N_a = 4096;
  std::size_t N_r = 2048;
  /// Not fixed by the reference parameters; chosen so prf equals B_p and
  /// the range window holds the longest pulse several times over.
  double prf = 1200.0;
  double f_s = 24e6;
};

RadarConfig profile_radar(const ReferenceProfile& p, double squint_deg);
/// Interference at the centre pulse with R_i = R_ref, f_i0 = 0 and unit amplitude.
InterferenceConfig profile_interference(const ReferenceProfile& p, const RadarConfig& cfg);

struct ReproEntry {
  double squint_deg = 0.0;
  ArtefactFootprint predicted;
  SupportBox measured;     ///< -20 dB support
  SupportBox measured_6db; ///< -6 dB support
  double rank1_error = 0.0;
  std::vector<double> rank_k_errors;  ///< k = 1..100
  std::vector<double> sigma_head;     ///< leading singular values
};

struct ReproReport {
  std::uint64_t seed = 0;
  ReferenceProfile profile;
  std::vector<ReproEntry> entries;
};

struct ReproOptions {
  std::uint64_t seed = 7;
  std::size_t k_max = 100;
  /// When set, focused images are written there as image_<squint>.sarc.
  std::optional<std::filesystem::path> artefact_dir;
};

/// Simulates the interference-only scene for every squint, focuses it,
/// predicts and measures the footprint and computes the rank-error curve.
ReproReport repro(const ReferenceProfile& profile, const ReproOptions& opts = {});

/// Interference-only image of the profile at one squint.
ComplexMatrix simulate_focused_artefact(const RadarConfig& cfg, const InterferenceConfig& icfg);

Json to_json(const ReproReport& r);

}  // namespace sarrfi

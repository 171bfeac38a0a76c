// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

struct PointScatterer {
  cdouble gamma0{1.0, 0.0};  ///< complex reflectivity
  double x0 = 0.0;           ///< zero-Doppler azimuth position [m]
  double R0 = 0.0;           ///< minimum slant range [m]
};

struct Scene {
  std::vector<PointScatterer> scatterers;
};

/// Instantaneous Doppler 2 V (x0 - V eta) / (lambda R(eta)) of a scatterer.
double instantaneous_doppler(const PointScatterer& s, const RadarConfig& cfg, double eta);

/// Baseband raw echo of a point-scatterer scene on the grid raw_grid(cfg).
/// A pulse sees a scatterer only while its instantaneous Doppler lies within
/// f_etac +- B_p/2. Scatterers that never contribute a sample produce a warning.
ComplexMatrix simulate_echo(const Scene& scene, const RadarConfig& cfg);

/// Adds one LFM interfering pulse to row icfg.pulse_index. Other rows are untouched.
/// Throws Errc::empty_support if the pulse falls entirely outside the range window.
ComplexMatrix inject_interference(ComplexMatrix raw, const RadarConfig& cfg,
                                  const InterferenceConfig& icfg);

}  // namespace sarrfi

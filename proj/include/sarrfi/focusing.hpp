// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

/// Frequency and range-gate grids used by the omega-K processor.
struct FocusPlan {
  RadarConfig cfg;
  /// Doppler frequency of each azimuth FFT bin, unfolded into [f_etac - prf/2, f_etac + prf/2).
  std::vector<double> f_eta_grid;
  /// Range frequency of each range FFT bin (FFTW order).
  std::vector<double> f_tau_grid;
  /// Slant range of each output range gate, R_ref + c tau / 2.
  std::vector<double> R0_grid;
};

FocusPlan make_focus_plan(const RadarConfig& cfg);

/// sqrt(1 - c^2 f_eta^2 / (4 V^2 f0^2)). Throws Errc::domain_error when the
/// argument of the square root is not positive.
double d_factor(double f_eta, const RadarConfig& cfg);

/// Stationary-phase spectrum of a unit chirp: rect(f/(K Tdur)) exp(-j pi f^2 / K).
/// Throws Errc::invalid_argument for K == 0.
cdouble lfm_spectrum(double K, double Tdur, double f);

enum class FocusStage {
  wavenumber,      ///< after the 2-D forward transform
  reference,       ///< after the reference-function multiply
  range_doppler,   ///< after the range inverse transform
  azimuth_filter,  ///< after the per-gate azimuth matched filter
};

const char* to_string(FocusStage stage);

using FocusHook = std::function<void(FocusStage, const ComplexMatrix&)>;

/// Approximated omega-K focusing of raw data on raw_grid(cfg). The
/// returned image keeps the azimuth axis and measures range time relative
/// to 2 R_ref / c. Frequency-domain snapshots passed to `hook` keep the raw
/// axes; rows and columns are in FFT bin order.
ComplexMatrix focus_omegak(const ComplexMatrix& raw, const RadarConfig& cfg,
                           const FocusHook& hook = {});

}  // namespace sarrfi

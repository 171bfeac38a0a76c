// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

/// ||J - J_est||_F^2 / ||J||_F^2. Throws Errc::invalid_argument for a zero reference.
double relative_error(const ComplexMatrix& J, const ComplexMatrix& J_est);

/// Fraction of energy left after the best rank-k approximation, for k = 1..k_max.
std::vector<std::pair<std::size_t, double>> rank_error_curve(const ComplexMatrix& m,
                                                             std::size_t k_max);

/// Same curve from the leading singular values and the total energy ||m||_F^2.
std::vector<std::pair<std::size_t, double>> rank_error_curve(std::span<const double> sigma,
                                                             double total_energy,
                                                             std::size_t k_max);

struct Spectrogram {
  std::vector<double> values;  ///< frames x bins, row-major, dB
  std::size_t frames = 0;
  std::size_t bins = 0;
  Axis time_axis;  ///< centre time of each frame [s]
  Axis freq_axis;  ///< bin frequency, ascending from -rate/2 [Hz]
  std::size_t window_len = 0;
  std::size_t hop = 0;

  double at(std::size_t frame, std::size_t bin) const { return values[frame * bins + bin]; }
};

inline constexpr double kDbFloor = -120.0;

/// Rectangular-window STFT magnitude in dB. Frame t covers samples
/// [t hop, t hop + window_len). `t_start` is the time of sample 0.
Spectrogram stft(std::span<const cdouble> signal, std::size_t window_len, std::size_t hop,
                 double sample_rate, double t_start = 0.0, double floor_db = kDbFloor);

struct RidgeFit {
  double slope = 0.0;      ///< Hz/s
  double intercept = 0.0;  ///< Hz at t = 0, wrapped into the frequency axis span
  std::size_t frames_used = 0;
};

/// Least-squares line through the per-frame peak frequency, using frames
/// whose peak is within `range_db` of the strongest frame. Peak frequencies
/// are unwrapped modulo the sample rate between consecutive used frames.
RidgeFit ridge_slope(const Spectrogram& s, double range_db = 20.0);

struct SupportBox {
  std::size_t row_min = 0;
  std::size_t row_max = 0;
  std::size_t col_min = 0;
  std::size_t col_max = 0;
  double centroid_row = 0.0;  ///< energy centroid over the mask
  double centroid_col = 0.0;
  std::size_t count = 0;
};

/// Bounding box and energy centroid of pixels with |x| >= max|x| * 10^(-threshold_db/20).
/// Throws Errc::empty_support for an all-zero image.
SupportBox measure_support(const ComplexMatrix& img, double threshold_db);

}  // namespace sarrfi

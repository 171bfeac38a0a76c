// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sarrfi/error.hpp"

namespace sarrfi {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

/// Platform and waveform constants of the imaging radar.
struct RadarConfig {
  double f0 = 0.0;          ///< carrier frequency [Hz]
  double K_r = 0.0;         ///< range FM rate [Hz/s]
  double T = 0.0;           ///< pulse duration [s]
  double V = 0.0;           ///< effective velocity [m/s]
  double B_p = 0.0;         ///< processed Doppler bandwidth [Hz]
  double prf = 0.0;         ///< pulse repetition frequency [Hz]
  double f_s = 0.0;         ///< range sampling rate [Hz]
  double R_ref = 0.0;       ///< reference slant range [m]
  double squint_deg = 0.0;  ///< antenna squint [deg]
  std::size_t N_a = 0;      ///< azimuth samples
  std::size_t N_r = 0;      ///< range samples
  double eta0 = 0.0;        ///< azimuth time of the first pulse [s]
  double tau0 = 0.0;        ///< fast time of the first range sample [s]

  double wavelength() const { return kSpeedOfLight / f0; }
  /// f_etac = 2 V sin(squint) f0 / c.
  double doppler_centroid() const;
  /// Throws Errc::invalid_config naming the first violated constraint.
  void validate() const;
};

/// Sets eta0/tau0 so the raw window is centred on eta = 0 and on the
/// reference delay 2 R_ref / c.
void center_windows(RadarConfig& cfg);

/// A single LFM pulse from another emitter, captured on one azimuth line.
struct InterferenceConfig {
  double K_i = 0.0;          ///< FM rate [Hz/s]
  double T_i = 0.0;          ///< pulse duration [s]
  double f_i0 = 0.0;         ///< carrier gap f_i - f0 [Hz]
  double R_i = 0.0;          ///< equivalent slant range of the delay [m]
  cdouble gamma_i{1.0, 0.0}; ///< complex amplitude
  std::size_t pulse_index = 0;

  void validate(const RadarConfig& cfg) const;
};

/// Uniformly sampled axis: value(k) = start + k * step.
struct Axis {
  double start = 0.0;
  double step = 1.0;

  double at(double index) const { return start + index * step; }
  double index_of(double value) const { return (value - start) / step; }
  bool operator==(const Axis&) const = default;
};

enum class DomainTag : std::uint16_t {
  raw = 0,
  wavenumber = 1,
  range_doppler = 2,
  image = 3,
};

const char* to_string(DomainTag tag);

/// Shape and axis metadata of a sample grid, without samples.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Axis eta;
  Axis tau;
  bool operator==(const Grid&) const = default;
};

/// Raw acquisition grid implied by a radar configuration.
Grid raw_grid(const RadarConfig& cfg);
/// Focused image grid: azimuth time unchanged, range time relative to the
/// reference delay 2 R_ref / c.
Grid image_grid(const RadarConfig& cfg);

/// Dense row-major complex samples; row = azimuth (pulse), column = range.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, Axis eta = {}, Axis tau = {},
                DomainTag tag = DomainTag::raw);
  ComplexMatrix(const Grid& grid, DomainTag tag);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> data, Axis eta,
                Axis tau, DomainTag tag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  const Axis& axis_eta() const { return eta_; }
  const Axis& axis_tau() const { return tau_; }
  DomainTag domain() const { return tag_; }
  Grid grid() const { return {rows_, cols_, eta_, tau_}; }

  void set_axes(Axis eta, Axis tau);
  void set_domain(DomainTag tag) { tag_ = tag; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cdouble> data() { return data_; }
  std::span<const cdouble> data() const { return data_; }
  std::span<cdouble> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const cdouble> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<cdouble> column(std::size_t c) const;

  /// Copy of the sub-block [r0, r0+nr) x [c0, c0+nc) with shifted axes.
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& tile);

  double frobenius_norm_sq() const;
  double frobenius_norm() const;
  bool same_shape(const ComplexMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cdouble scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
  Axis eta_;
  Axis tau_;
  DomainTag tag_ = DomainTag::raw;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);

struct PixelPoint {
  double row = 0.0;
  double col = 0.0;
};

/// Fractional pixel coordinates of (eta, tau); out-of-range points are returned as is.
PixelPoint axis_to_pixel(const Grid& grid, double eta, double tau);
inline PixelPoint axis_to_pixel(const ComplexMatrix& m, double eta, double tau) {
  return axis_to_pixel(m.grid(), eta, tau);
}
std::pair<double, double> pixel_to_axis(const Grid& grid, PixelPoint px);

struct PixelFootprint {
  double row_center = 0.0;
  double col_center = 0.0;
  double row_extent = 0.0;
  double col_extent = 0.0;
  double row_start = 0.0;
  double row_end = 0.0;
  double col_start = 0.0;
  double col_end = 0.0;
};

/// Predicted image-domain centre and extent of an interference artefact.
struct ArtefactFootprint {
  double eta_i = 0.0;      ///< azimuth centre [s]
  double tau_i = 0.0;      ///< range centre [s]
  double d_eta = 0.0;      ///< exact azimuth extent eta_end - eta_start [s]
  double d_eta_approx = 0.0;  ///< B_p / K_a shorthand [s]
  double d_tau = 0.0;      ///< range extent [s]
  double eta_start = 0.0;
  double eta_end = 0.0;
  double tau_start = 0.0;
  double tau_end = 0.0;
  std::optional<PixelFootprint> px;
};

/// Y = J + I split returned by the mitigation solvers.
struct LowRankSplit {
  ComplexMatrix J;  ///< interference estimate
  ComplexMatrix I;  ///< image estimate
  std::vector<double> sigma;
  int iters = 0;
  double feas = 0.0;  ///< ||Y - J - I||_F / ||Y||_F
  bool converged = true;
  std::vector<double> feas_history;
};

}  // namespace sarrfi

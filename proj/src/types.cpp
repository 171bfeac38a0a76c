// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/types.hpp"

#include <cmath>
#include <sstream>

namespace sarrfi {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_config: return "invalid_config";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::shape_mismatch: return "shape_mismatch";
    case Errc::bad_domain: return "bad_domain";
    case Errc::domain_error: return "domain_error";
    case Errc::sinc_mode: return "sinc_mode";
    case Errc::non_finite: return "non_finite";
    case Errc::empty_support: return "empty_support";
    case Errc::bad_magic: return "bad_magic";
    case Errc::unsupported_version: return "unsupported_version";
    case Errc::truncated_payload: return "truncated_payload";
    case Errc::dimension_overflow: return "dimension_overflow";
    case Errc::io: return "io";
  }
  return "unknown";
}

const char* to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::raw: return "raw";
    case DomainTag::wavenumber: return "wavenumber";
    case DomainTag::range_doppler: return "range-doppler";
    case DomainTag::image: return "image";
  }
  return "unknown";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::invalid_config, what);
}

}  // namespace

double RadarConfig::doppler_centroid() const {
  return 2.0 * V * std::sin(squint_deg * kPi / 180.0) * f0 / kSpeedOfLight;
}

void RadarConfig::validate() const {
  require(std::isfinite(f0) && f0 > 0.0, "radar: f0 must be > 0");
  require(std::isfinite(K_r) && K_r != 0.0, "radar: K_r must be nonzero");
  require(std::isfinite(T) && T > 0.0, "radar: T must be > 0");
  require(std::isfinite(V) && V > 0.0, "radar: V must be > 0");
  require(std::isfinite(B_p) && B_p > 0.0, "radar: B_p must be > 0");
  require(std::isfinite(prf) && prf >= B_p, "radar: prf must be >= B_p");
  require(std::isfinite(f_s) && f_s >= std::abs(K_r) * T, "radar: f_s must be >= |K_r| T");
  require(std::isfinite(R_ref) && R_ref > 0.0, "radar: R_ref must be > 0");
  require(N_a >= 2 && N_r >= 2, "radar: N_a and N_r must be >= 2");
  require(std::isfinite(eta0) && std::isfinite(tau0), "radar: eta0/tau0 must be finite");
  // The Doppler axis is centred on f_etac, so only the processed band edges
  // need a real-valued migration factor.
  const double fmax = std::abs(doppler_centroid()) + B_p / 2.0;
  require(kSpeedOfLight * fmax < 2.0 * V * f0, "radar: Doppler band exceeds 2 V f0 / c");
}

void center_windows(RadarConfig& cfg) {
  cfg.eta0 = -static_cast<double>(cfg.N_a / 2) / cfg.prf;
  cfg.tau0 = 2.0 * cfg.R_ref / kSpeedOfLight - static_cast<double>(cfg.N_r / 2) / cfg.f_s;
}

void InterferenceConfig::validate(const RadarConfig& cfg) const {
  require(std::isfinite(K_i), "interference: K_i must be finite");
  require(std::isfinite(T_i) && T_i > 0.0, "interference: T_i must be > 0");
  require(std::isfinite(R_i) && R_i > 0.0, "interference: R_i must be > 0");
  require(std::isfinite(f_i0), "interference: f_i0 must be finite");
  require(std::isfinite(gamma_i.real()) && std::isfinite(gamma_i.imag()),
          "interference: gamma_i must be finite");
  require(pulse_index < cfg.N_a, "interference: pulse_index must be < N_a");
  require(std::abs(f_i0) + std::abs(K_i) * T_i / 2.0 <= cfg.f_s / 2.0,
          "interference: band must fall inside the receiver band");
}

Grid raw_grid(const RadarConfig& cfg) {
  return {cfg.N_a, cfg.N_r, {cfg.eta0, 1.0 / cfg.prf}, {cfg.tau0, 1.0 / cfg.f_s}};
}

Grid image_grid(const RadarConfig& cfg) {
  return {cfg.N_a, cfg.N_r, {cfg.eta0, 1.0 / cfg.prf},
          {cfg.tau0 - 2.0 * cfg.R_ref / kSpeedOfLight, 1.0 / cfg.f_s}};
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, Axis eta, Axis tau, DomainTag tag)
    : rows_(rows), cols_(cols), data_(rows * cols), eta_(eta), tau_(tau), tag_(tag) {
  set_axes(eta, tau);
}

ComplexMatrix::ComplexMatrix(const Grid& grid, DomainTag tag)
    : ComplexMatrix(grid.rows, grid.cols, grid.eta, grid.tau, tag) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> data,
                             Axis eta, Axis tau, DomainTag tag)
    : rows_(rows), cols_(cols), data_(std::move(data)), tag_(tag) {
  if (data_.size() != rows * cols) {
    throw Error(Errc::shape_mismatch, "matrix: data length differs from rows*cols");
  }
  set_axes(eta, tau);
}

void ComplexMatrix::set_axes(Axis eta, Axis tau) {
  if (!(eta.step > 0.0) || !(tau.step > 0.0)) {
    throw Error(Errc::invalid_argument, "matrix: axis steps must be > 0");
  }
  eta_ = eta;
  tau_ = tau;
}

std::vector<cdouble> ComplexMatrix::column(std::size_t c) const {
  std::vector<cdouble> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(Errc::shape_mismatch, "matrix: block exceeds bounds");
  }
  ComplexMatrix out(nr, nc, {eta_.at(static_cast<double>(r0)), eta_.step},
                    {tau_.at(static_cast<double>(c0)), tau_.step}, tag_);
  for (std::size_t r = 0; r < nr; ++r) {
    const auto src = row(r0 + r).subspan(c0, nc);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& tile) {
  if (r0 + tile.rows() > rows_ || c0 + tile.cols() > cols_) {
    throw Error(Errc::shape_mismatch, "matrix: block exceeds bounds");
  }
  for (std::size_t r = 0; r < tile.rows(); ++r) {
    const auto src = tile.row(r);
    std::copy(src.begin(), src.end(), row(r0 + r).begin() + static_cast<std::ptrdiff_t>(c0));
  }
}

double ComplexMatrix::frobenius_norm_sq() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return s;
}

double ComplexMatrix::frobenius_norm() const { return std::sqrt(frobenius_norm_sq()); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw Error(Errc::shape_mismatch, "matrix: shape mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw Error(Errc::shape_mismatch, "matrix: shape mismatch in -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }

PixelPoint axis_to_pixel(const Grid& grid, double eta, double tau) {
  return {grid.eta.index_of(eta), grid.tau.index_of(tau)};
}

std::pair<double, double> pixel_to_axis(const Grid& grid, PixelPoint px) {
  return {grid.eta.at(px.row), grid.tau.at(px.col)};
}

}  // namespace sarrfi

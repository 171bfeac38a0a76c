// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sarrfi/fft.hpp"
#include "sarrfi/svd.hpp"

namespace sarrfi {

double relative_error(const ComplexMatrix& J, const ComplexMatrix& J_est) {
  if (!J.same_shape(J_est)) throw Error(Errc::shape_mismatch, "relative_error: shape mismatch");
  const double ref = J.frobenius_norm_sq();
  if (!(ref > 0.0)) throw Error(Errc::invalid_argument, "relative_error: reference is zero");
  double num = 0.0;
  const auto a = J.data();
  const auto b = J_est.data();
  for (std::size_t k = 0; k < a.size(); ++k) num += std::norm(a[k] - b[k]);
  return num / ref;
}

std::vector<std::pair<std::size_t, double>> rank_error_curve(std::span<const double> sigma,
                                                             double total_energy,
                                                             std::size_t k_max) {
  if (k_max > sigma.size()) {
    throw Error(Errc::invalid_argument, "rank_error_curve: k_max exceeds available singular values");
  }
  if (!(total_energy > 0.0)) throw Error(Errc::invalid_argument, "rank_error_curve: zero matrix");
  // Summing the tail from the smallest value keeps small errors accurate.
  std::vector<double> kept(k_max + 1, 0.0);
  for (std::size_t k = 0; k < k_max; ++k) kept[k + 1] = kept[k] + sigma[k] * sigma[k];
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(k_max);
  double prev = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double e = std::max(0.0, (total_energy - kept[k]) / total_energy);
    e = std::min(e, prev);
    out.emplace_back(k, e);
    prev = e;
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> rank_error_curve(const ComplexMatrix& m,
                                                             std::size_t k_max) {
  if (k_max > std::min(m.rows(), m.cols())) {
    throw Error(Errc::invalid_argument, "rank_error_curve: k_max exceeds min(rows, cols)");
  }
  const std::vector<double> sigma = singular_values(m);
  std::vector<double> tail(sigma.size() + 1, 0.0);
  for (std::size_t i = sigma.size(); i-- > 0;) tail[i] = tail[i + 1] + sigma[i] * sigma[i];
  const double total = tail[0];
  if (!(total > 0.0)) throw Error(Errc::invalid_argument, "rank_error_curve: zero matrix");
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) out.emplace_back(k, tail[k] / total);
  return out;
}

Spectrogram stft(std::span<const cdouble> signal, std::size_t window_len, std::size_t hop,
                 double sample_rate, double t_start, double floor_db) {
  if (window_len < 2) throw Error(Errc::invalid_argument, "stft: window_len must be >= 2");
  if (hop < 1) throw Error(Errc::invalid_argument, "stft: hop must be >= 1");
  if (window_len > signal.size()) throw Error(Errc::invalid_argument, "stft: window longer than signal");
  if (!(sample_rate > 0.0)) throw Error(Errc::invalid_argument, "stft: sample_rate must be > 0");

  Spectrogram s;
  s.window_len = window_len;
  s.hop = hop;
  s.frames = (signal.size() - window_len) / hop + 1;
  s.bins = window_len;
  s.values.assign(s.frames * s.bins, floor_db);
  const double dt = 1.0 / sample_rate;
  s.time_axis = {t_start + 0.5 * static_cast<double>(window_len - 1) * dt, static_cast<double>(hop) * dt};
  const double df = sample_rate / static_cast<double>(window_len);
  s.freq_axis = {-static_cast<double>(window_len / 2) * df, df};

  std::vector<cdouble> buf(window_len);
  const std::size_t half = window_len / 2;
  for (std::size_t t = 0; t < s.frames; ++t) {
    std::copy_n(signal.begin() + static_cast<std::ptrdiff_t>(t * hop), window_len, buf.begin());
    fft(buf, FftDir::forward);
    for (std::size_t k = 0; k < window_len; ++k) {
      // Shifted so that bin 0 is the most negative frequency.
      const double p = std::norm(buf[(k + window_len - half) % window_len]);
      const double db = p > 0.0 ? 10.0 * std::log10(p) : floor_db;
      s.values[t * s.bins + k] = std::max(db, floor_db);
    }
  }
  return s;
}

RidgeFit ridge_slope(const Spectrogram& s, double range_db) {
  if (s.frames == 0 || s.bins < 3) throw Error(Errc::invalid_argument, "ridge_slope: empty spectrogram");
  std::vector<double> peak_db(s.frames);
  std::vector<double> peak_f(s.frames);
  for (std::size_t t = 0; t < s.frames; ++t) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.bins; ++k) {
      if (s.at(t, k) > s.at(t, best)) best = k;
    }
    // Parabolic refinement on the (cyclic) neighbours of the peak bin.
    const double ym = s.at(t, (best + s.bins - 1) % s.bins);
    const double y0 = s.at(t, best);
    const double yp = s.at(t, (best + 1) % s.bins);
    const double den = ym - 2.0 * y0 + yp;
    const double delta = den < 0.0 ? std::clamp(0.5 * (ym - yp) / den, -0.5, 0.5) : 0.0;
    peak_db[t] = y0;
    peak_f[t] = s.freq_axis.at(static_cast<double>(best) + delta);
  }
  const double top = *std::max_element(peak_db.begin(), peak_db.end());
  if (top <= *std::min_element(s.values.begin(), s.values.end())) {
    throw Error(Errc::empty_support, "ridge_slope: flat spectrogram");
  }
  const double rate = s.freq_axis.step * static_cast<double>(s.bins);

  std::vector<double> ts;
  std::vector<double> fs;
  for (std::size_t t = 0; t < s.frames; ++t) {
    if (peak_db[t] < top - range_db) continue;
    double f = peak_f[t];
    if (!fs.empty()) {
      const double d = f - fs.back();
      f -= rate * std::round(d / rate);
    }
    ts.push_back(s.time_axis.at(static_cast<double>(t)));
    fs.push_back(f);
  }
  RidgeFit fit;
  fit.frames_used = ts.size();
  if (ts.size() < 2) throw Error(Errc::empty_support, "ridge_slope: fewer than two frames above range");
  const double n = static_cast<double>(ts.size());
  double mt = 0.0, mf = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    mf += fs[i];
  }
  mt /= n;
  mf /= n;
  double stt = 0.0, stf = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stf += (ts[i] - mt) * (fs[i] - mf);
  }
  fit.slope = stf / stt;
  // The unwrapped track is defined up to whole multiples of the sample rate.
  const double b = mf - fit.slope * mt - s.freq_axis.start;
  fit.intercept = s.freq_axis.start + b - rate * std::floor(b / rate);
  return fit;
}

SupportBox measure_support(const ComplexMatrix& img, double threshold_db) {
  double peak = 0.0;
  for (const auto& v : img.data()) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw Error(Errc::empty_support, "measure_support: image is all zero");
  const double level = peak * std::pow(10.0, -threshold_db / 20.0);

  SupportBox box;
  box.row_min = img.rows();
  box.col_min = img.cols();
  double w = 0.0, wr = 0.0, wc = 0.0;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    const auto line = img.row(r);
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const double a = std::abs(line[c]);
      if (a < level) continue;
      box.row_min = std::min(box.row_min, r);
      box.row_max = std::max(box.row_max, r);
      box.col_min = std::min(box.col_min, c);
      box.col_max = std::max(box.col_max, c);
      const double e = a * a;
      w += e;
      wr += e * static_cast<double>(r);
      wc += e * static_cast<double>(c);
      ++box.count;
    }
  }
  box.centroid_row = wr / w;
  box.centroid_col = wc / w;
  return box;
}

}  // namespace sarrfi

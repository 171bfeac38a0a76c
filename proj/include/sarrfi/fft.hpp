// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "sarrfi/types.hpp"

namespace sarrfi {

enum class FftDir { forward, inverse };

/// Unitary (1/sqrt(N)) in-place DFT of a contiguous vector.
void fft(std::span<cdouble> x, FftDir dir);

/// Unitary DFT of every row (along range).
void fft_rows(ComplexMatrix& m, FftDir dir);
/// Unitary DFT of every column (along azimuth).
void fft_cols(ComplexMatrix& m, FftDir dir);

/// Frequencies of DFT bins in FFTW order: k * rate / n, wrapped to [-rate/2, rate/2).
std::vector<double> fft_frequencies(std::size_t n, double rate);

}  // namespace sarrfi

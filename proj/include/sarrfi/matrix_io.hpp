// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "sarrfi/types.hpp"

namespace sarrfi {

/// SARC container: little-endian header followed by interleaved f32 (re, im).
inline constexpr std::uint16_t kSarcVersion = 1;
inline constexpr std::size_t kSarcHeaderBytes = 4 + 2 + 2 + 4 + 4 + 4 * 8;

void write_matrix(const ComplexMatrix& m, std::ostream& out);
void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path);

/// Throws Errc::bad_magic, Errc::unsupported_version, Errc::truncated_payload
/// or Errc::dimension_overflow on malformed input.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix(const std::filesystem::path& path);

}  // namespace sarrfi

// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace sarrfi {
namespace {

static_assert(std::endian::native == std::endian::little, "SARC I/O assumes a little-endian host");

// Guard against headers whose sample count cannot be allocated sensibly.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 31;

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> buf;
  std::memcpy(buf.data(), &value, sizeof(T));
  out.write(buf.data(), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> buf;
  if (!in.read(buf.data(), sizeof(T))) throw Error(Errc::truncated_payload, "sarc: truncated header");
  T value;
  std::memcpy(&value, buf.data(), sizeof(T));
  return value;
}

}  // namespace

void write_matrix(const ComplexMatrix& m, std::ostream& out) {
  if (m.rows() > std::numeric_limits<std::uint32_t>::max() ||
      m.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::dimension_overflow, "sarc: dimensions exceed u32");
  }
  out.write("SARC", 4);
  put<std::uint16_t>(out, kSarcVersion);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(m.domain()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
  put<double>(out, m.axis_eta().start);
  put<double>(out, m.axis_eta().step);
  put<double>(out, m.axis_tau().start);
  put<double>(out, m.axis_tau().step);

  std::vector<float> buf(2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto line = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      buf[2 * c] = static_cast<float>(line[c].real());
      buf[2 * c + 1] = static_cast<float>(line[c].imag());
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  if (!out) throw Error(Errc::io, "sarc: write failed");
}

void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "sarc: cannot open " + path.string() + " for writing");
  write_matrix(m, out);
}

ComplexMatrix read_matrix(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::memcmp(magic.data(), "SARC", 4) != 0) {
    throw Error(Errc::bad_magic, "sarc: bad magic");
  }
  const auto version = get<std::uint16_t>(in);
  if (version != kSarcVersion) {
    throw Error(Errc::unsupported_version, "sarc: unsupported version " + std::to_string(version));
  }
  const auto tag = get<std::uint16_t>(in);
  if (tag > static_cast<std::uint16_t>(DomainTag::image)) {
    throw Error(Errc::bad_domain, "sarc: unknown domain tag " + std::to_string(tag));
  }
  const std::uint64_t rows = get<std::uint32_t>(in);
  const std::uint64_t cols = get<std::uint32_t>(in);
  Axis eta{get<double>(in), 0.0};
  eta.step = get<double>(in);
  Axis tau{get<double>(in), 0.0};
  tau.step = get<double>(in);
  if (rows * cols > kMaxSamples) {
    throw Error(Errc::dimension_overflow, "sarc: " + std::to_string(rows) + "x" +
                                              std::to_string(cols) + " exceeds sample limit");
  }

  std::vector<cdouble> data(rows * cols);
  std::vector<float> buf(2 * cols);
  const auto line_bytes = static_cast<std::streamsize>(buf.size() * sizeof(float));
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), line_bytes)) {
      throw Error(Errc::truncated_payload,
                  "sarc: payload ends at row " + std::to_string(r) + " of " + std::to_string(rows));
    }
    for (std::uint64_t c = 0; c < cols; ++c) {
      data[r * cols + c] = {static_cast<double>(buf[2 * c]), static_cast<double>(buf[2 * c + 1])};
    }
  }
  return ComplexMatrix(rows, cols, std::move(data), eta, tau, static_cast<DomainTag>(tag));
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "sarc: cannot open " + path.string());
  return read_matrix(in);
}

}  // namespace sarrfi

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sarrfi {

enum class Errc {
  invalid_config,
  invalid_argument,
  shape_mismatch,
  bad_domain,
  domain_error,       // argument outside a function's mathematical domain
  sinc_mode,          // K_r == K_i, the artefact degenerates to a sinc line
  non_finite,
  empty_support,
  bad_magic,
  unsupported_version,
  truncated_payload,
  dimension_overflow,
  io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sarrfi

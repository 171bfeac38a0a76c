// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace sarrfi::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

void set_level(Level level);
Level level();

/// Writes one structured line to stderr: `level=<l> module=<m> msg="<text>"`.
void write(Level level, std::string_view module, std::string_view message);

inline void info(std::string_view module, std::string_view message) {
  write(Level::info, module, message);
}
inline void warn(std::string_view module, std::string_view message) {
  write(Level::warn, module, message);
}
inline void error(std::string_view module, std::string_view message) {
  write(Level::error, module, message);
}

}  // namespace sarrfi::log

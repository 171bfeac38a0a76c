// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <string>

namespace sarrfi::log {
namespace {

std::atomic<Level> g_level{Level::warn};
std::mutex g_mutex;

const char* name(Level l) {
  switch (l) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
    case Level::off: return "off";
  }
  return "?";
}

}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void write(Level l, std::string_view module, std::string_view message) {
  if (l < g_level.load() || l == Level::off) return;
  std::string escaped;
  escaped.reserve(message.size());
  for (char ch : message) {
    if (ch == '"' || ch == '\\') escaped.push_back('\\');
    escaped.push_back(ch == '\n' ? ' ' : ch);
  }
  std::lock_guard lock(g_mutex);
  std::fprintf(stderr, "level=%s module=%.*s msg=\"%s\"\n", name(l),
               static_cast<int>(module.size()), module.data(), escaped.c_str());
}

}  // namespace sarrfi::log

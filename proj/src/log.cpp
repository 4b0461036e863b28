// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/log.hpp"

#include <cstdlib>
#include <iostream>

namespace crossfield::log {

int verbosity() {
  static const int level = [] {
    const char* env = std::getenv("CROSSFIELD_LOG");
    if (!env) return 0;
    return std::atoi(env);
  }();
  return level;
}

void warn(const std::string& message) {
  std::cerr << "[crossfield] warning: " << message << '\n';
}

void info(const std::string& message) {
  if (verbosity() >= 1) std::cerr << "[crossfield] " << message << '\n';
}

void debug(const std::string& message) {
  if (verbosity() >= 2) std::cerr << "[crossfield] debug: " << message << '\n';
}

}  // namespace crossfield::log

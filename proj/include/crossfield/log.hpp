// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_LOG_HPP
#define CROSSFIELD_LOG_HPP

#include <string>

namespace crossfield::log {

// Verbosity from the CROSSFIELD_LOG env var: 0 warnings only (default),
// 1 adds info, 2 adds debug. Messages go to stderr.
int verbosity();

void warn(const std::string& message);
void info(const std::string& message);
void debug(const std::string& message);

}  // namespace crossfield::log

#endif  // CROSSFIELD_LOG_HPP

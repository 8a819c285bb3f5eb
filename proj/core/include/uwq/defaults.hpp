#pragma once

#include <string>

namespace uwq {

inline constexpr const char* kVersion = "0.1.0";

// Desk-scale grid used when no --n / --L / --d is given.
inline constexpr int kDefaultN = 128;
inline constexpr double kDefaultL = 10.0;
inline constexpr int kDefaultD = 1;

/// One-line header echoed into every report.
std::string defaults_banner();

}  // namespace uwq

#pragma once

namespace toricap {

inline constexpr const char* kToolName = "toricap";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace toricap

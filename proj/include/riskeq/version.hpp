#pragma once

namespace riskeq {

inline constexpr const char* kToolName = "riskeq";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace riskeq

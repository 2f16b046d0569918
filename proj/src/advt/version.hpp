#pragma once

namespace advt {

inline constexpr const char* kToolName = "advtext";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace advt

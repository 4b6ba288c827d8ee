#pragma once

namespace ans {

inline constexpr const char* kVersion = "ans 1.0.0";

}  // namespace ans

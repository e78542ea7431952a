#pragma once

namespace hallmild {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hallmild

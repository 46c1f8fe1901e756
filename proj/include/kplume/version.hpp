#pragma once

namespace kplume {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kplume

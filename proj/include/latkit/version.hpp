#pragma once

namespace latkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latkit

#pragma once

namespace swg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swg

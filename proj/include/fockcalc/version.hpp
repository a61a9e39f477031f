#pragma once

namespace fockcalc {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace fockcalc

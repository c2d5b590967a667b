#pragma once

namespace softhand {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace softhand

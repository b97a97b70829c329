#pragma once

namespace alohacorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace alohacorr

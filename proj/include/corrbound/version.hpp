#pragma once

namespace corrbound {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace corrbound

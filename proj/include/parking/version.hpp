#pragma once

namespace parking {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace parking

#pragma once

namespace robin {

inline constexpr const char* version = "0.1.0";

}  // namespace robin

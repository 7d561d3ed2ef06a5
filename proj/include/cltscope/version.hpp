#pragma once

namespace cltscope {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cltscope

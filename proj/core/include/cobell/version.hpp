#pragma once

#include <string_view>

namespace cobell {

inline constexpr std::string_view version = "0.1.0";

}  // namespace cobell

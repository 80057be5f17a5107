#pragma once

namespace hproj {
inline constexpr const char* kVersion = "0.1.0";
}

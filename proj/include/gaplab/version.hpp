#pragma once

namespace gaplab {
inline constexpr const char* kVersion = "0.1.0";
}

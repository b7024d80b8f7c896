#pragma once

namespace lzslab {
inline constexpr const char* kVersion = "1.0.0";
}

#pragma once

namespace bandlab {
inline constexpr const char* kVersion = "bandlab 0.1.0";
}

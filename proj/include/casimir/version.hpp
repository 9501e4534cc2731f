#pragma once

namespace casimir {
inline constexpr const char* kVersion = "0.1.0";
}

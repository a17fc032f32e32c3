#pragma once

namespace lisdist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lisdist

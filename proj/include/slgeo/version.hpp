#pragma once

namespace slgeo {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "slgeo";

}  // namespace slgeo

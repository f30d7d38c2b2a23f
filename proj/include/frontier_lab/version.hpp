#pragma once

namespace flab {

inline constexpr const char* kArtifactName = "frontier-lab";
inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace flab

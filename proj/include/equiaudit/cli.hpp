#pragma once

namespace equiaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;         // malformed spec, bad flags, incompatible method
inline constexpr int kExitDegenerate = 3;    // mathematical degeneracy (singular Q_Gx)
inline constexpr int kExitVerification = 4;  // tightness / path-equality violation

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv);

}  // namespace equiaudit::cli

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gridmob {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "GRIDMOB_OUT_DIR";

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

// Entry point of the `gridmob` tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a byte string (used for config digests in manifests).
std::string sha256_hex(std::string_view bytes);

}  // namespace gridmob

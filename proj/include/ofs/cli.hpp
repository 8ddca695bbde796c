#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ofs::cli {

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kConfigError = 2, kDataError = 3, kNumericError = 4 };

/// Runs one `ofs` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

std::string version_string();

}  // namespace ofs::cli

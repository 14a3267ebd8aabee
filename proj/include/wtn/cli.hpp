#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace wtn::cli {

// Exit codes of the `wtn` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMissingFile = 2;

// Entry point of the `wtn` command; all output goes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

// Writes `contents` to dir/file_name and records its checksum in dir/manifest.json.
void write_artifact(const std::filesystem::path& dir, const std::string& file_name, const std::string& contents);

}  // namespace wtn::cli

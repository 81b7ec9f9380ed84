#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace mftk::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Current UTC time as ISO-8601 with a trailing 'Z'.
std::string utc_timestamp();

}  // namespace mftk::cli

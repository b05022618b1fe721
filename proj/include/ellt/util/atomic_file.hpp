#pragma once

#include <filesystem>
#include <string>

namespace ellt::util {

// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);
// Throws ellt::Error with the path when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace ellt::util

#pragma once

#include <string>
#include <string_view>

namespace corename {

/// Whole-file read; throws Error(IoError).
std::string read_file(const std::string& path);
/// Writes via a temporary sibling file and a rename, creating parent
/// directories as needed. Throws Error(IoError).
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace corename

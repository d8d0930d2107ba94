#pragma once

#include <filesystem>
#include <string>

namespace boolfilter {

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// 17 significant digits, `.` decimal separator.
std::string format_real(double v);

} // namespace boolfilter

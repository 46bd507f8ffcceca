#pragma once

#include <string>

namespace tdoslab {

std::string read_file(const std::string& path);

/// Write-then-rename so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace tdoslab

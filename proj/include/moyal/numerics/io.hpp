#pragma once

#include <string>
#include <string_view>

namespace moyal::numerics {

// Writes to path + ".tmp" and renames over path.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace moyal::numerics

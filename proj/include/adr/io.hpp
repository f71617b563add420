#pragma once

#include <string>

namespace adr {

// shortest text that round-trips a double, capped at 17 significant digits
std::string fmt17(double v);

// Write to <path>.tmp in the same directory, then rename over path.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);  // throws ConfigError if unreadable

}  // namespace adr

#pragma once

#include <string>

namespace nongibbs::io {

// fixed 17-significant-digit form: the float serialization every CSV and
// JSON artifact uses, so identical runs produce identical bytes
std::string g17(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string fnv_hex(const std::string& bytes);

} // namespace nongibbs::io

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reviewkit::digest {

std::string sha256_hex(const void* data, size_t size);
std::string sha256_hex(std::string_view text);
std::string sha256_hex(const std::vector<uint8_t>& bytes);

} // namespace reviewkit::digest

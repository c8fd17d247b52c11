#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace reviewkit::fs {

std::vector<uint8_t> read_bytes(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, const void* data, size_t size);
void write_text(const std::filesystem::path& path, std::string_view text);
void append_line(const std::filesystem::path& path, std::string_view line);

// Recursive copy that follows the source layout (dirs + regular files).
void copy_tree(const std::filesystem::path& from, const std::filesystem::path& to);

} // namespace reviewkit::fs

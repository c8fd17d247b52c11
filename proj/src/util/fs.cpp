#include "reviewkit/util/fs.hpp"

#include "reviewkit/util/error.hpp"

#include <fstream>

namespace reviewkit::fs {

namespace stdfs = std::filesystem;

std::vector<uint8_t> read_bytes(const stdfs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open " + path.string());
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    return data;
}

std::string read_text(const stdfs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void write_bytes(const stdfs::path& path, const void* data, size_t size) {
    if (path.has_parent_path()) stdfs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot write " + path.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw Error("io", "short write to " + path.string());
}

void write_text(const stdfs::path& path, std::string_view text) {
    write_bytes(path, text.data(), text.size());
}

void append_line(const stdfs::path& path, std::string_view line) {
    if (path.has_parent_path()) stdfs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw Error("io", "cannot append to " + path.string());
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
    if (!out) throw Error("io", "short write to " + path.string());
}

void copy_tree(const stdfs::path& from, const stdfs::path& to) {
    stdfs::create_directories(to);
    stdfs::copy(from, to,
                stdfs::copy_options::recursive | stdfs::copy_options::overwrite_existing);
}

} // namespace reviewkit::fs

#pragma once

#include "reviewkit/util/error.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace reviewkit::cfg {

// Layered key-value configuration: flag overrides > environment
// (REVIEWKIT_<DOTTED_KEY_UPPERCASED>) > config file (JSON tree) >
// built-in default. Keys are dotted paths like "ingest.target_dpi".
class Config {
public:
    Config() = default;

    // Error("config") on unreadable or unparseable files.
    static Config load_file(const std::filesystem::path& path);

    void set_override(const std::string& dotted_key, const std::string& value);

    std::string get(const std::string& dotted_key, const std::string& fallback = "") const;
    int64_t get_int(const std::string& dotted_key, int64_t fallback) const;
    double get_double(const std::string& dotted_key, double fallback) const;
    bool get_bool(const std::string& dotted_key, bool fallback) const;

    // Stable digest over the effective file tree + overrides; recorded in
    // run manifests.
    std::string digest() const;

private:
    std::optional<std::string> lookup(const std::string& dotted_key) const;

    std::string file_json_ = "{}";
    std::map<std::string, std::string> overrides_;
};

} // namespace reviewkit::cfg

#include "reviewkit/cfg/config.hpp"

#include "reviewkit/util/digest.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <cstdlib>

namespace reviewkit::cfg {

using nlohmann::json;

Config Config::load_file(const std::filesystem::path& path) {
    Config config;
    std::string text;
    try {
        text = fs::read_text(path);
    } catch (const Error& e) {
        throw Error("config", e.what());
    }
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error("config", "config file " + path.string() + " is not a JSON object");
    }
    config.file_json_ = doc.dump();
    return config;
}

void Config::set_override(const std::string& dotted_key, const std::string& value) {
    overrides_[dotted_key] = value;
}

std::optional<std::string> Config::lookup(const std::string& dotted_key) const {
    if (auto it = overrides_.find(dotted_key); it != overrides_.end()) return it->second;

    std::string env_name = "REVIEWKIT_";
    for (char c : dotted_key) {
        env_name.push_back(c == '.' ? '_' : static_cast<char>(toupper(c)));
    }
    if (const char* env = std::getenv(env_name.c_str())) return std::string(env);

    json node = json::parse(file_json_);
    for (const auto& part : strings::split(dotted_key, '.')) {
        if (!node.is_object() || !node.contains(part)) return std::nullopt;
        node = node[part];
    }
    if (node.is_string()) return node.get<std::string>();
    return node.dump();
}

std::string Config::get(const std::string& dotted_key, const std::string& fallback) const {
    return lookup(dotted_key).value_or(fallback);
}

int64_t Config::get_int(const std::string& dotted_key, int64_t fallback) const {
    auto v = lookup(dotted_key);
    if (!v) return fallback;
    try {
        return std::stoll(*v);
    } catch (...) {
        throw Error("config", "key '" + dotted_key + "' is not an integer: " + *v);
    }
}

double Config::get_double(const std::string& dotted_key, double fallback) const {
    auto v = lookup(dotted_key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (...) {
        throw Error("config", "key '" + dotted_key + "' is not a number: " + *v);
    }
}

bool Config::get_bool(const std::string& dotted_key, bool fallback) const {
    auto v = lookup(dotted_key);
    if (!v) return fallback;
    std::string s = strings::to_lower(*v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw Error("config", "key '" + dotted_key + "' is not a boolean: " + *v);
}

std::string Config::digest() const {
    std::string canon = file_json_;
    for (const auto& [k, v] : overrides_) {
        canon += "\x1e" + k + "\x1f" + v;
    }
    return digest::sha256_hex(canon);
}

} // namespace reviewkit::cfg

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace reviewkit::pdf {

class Object;
using ObjectPtr = std::shared_ptr<Object>;

struct Null {};

struct Name {
    std::string value;  // without the leading '/'
    bool operator==(const Name&) const = default;
    auto operator<=>(const Name&) const = default;
};

struct Ref {
    int num = 0;
    int gen = 0;
    bool operator==(const Ref&) const = default;
    auto operator<=>(const Ref&) const = default;
};

using Array = std::vector<ObjectPtr>;
using Dict = std::map<std::string, ObjectPtr>;

struct Stream {
    Dict dict;
    std::vector<uint8_t> raw;  // encoded bytes exactly as stored
};

class Object {
public:
    using Variant = std::variant<Null, bool, int64_t, double, std::string, Name, Array, Dict,
                                 Stream, Ref>;

    Object() : value(Null{}) {}
    explicit Object(Variant v) : value(std::move(v)) {}

    Variant value;

    bool is_null() const { return std::holds_alternative<Null>(value); }
    bool is_int() const { return std::holds_alternative<int64_t>(value); }
    bool is_number() const { return is_int() || std::holds_alternative<double>(value); }
    bool is_name() const { return std::holds_alternative<Name>(value); }
    bool is_array() const { return std::holds_alternative<Array>(value); }
    bool is_dict() const { return std::holds_alternative<Dict>(value); }
    bool is_stream() const { return std::holds_alternative<Stream>(value); }
    bool is_ref() const { return std::holds_alternative<Ref>(value); }

    int64_t as_int() const { return std::get<int64_t>(value); }
    double as_number() const {
        return is_int() ? static_cast<double>(std::get<int64_t>(value)) : std::get<double>(value);
    }
    const Name& as_name() const { return std::get<Name>(value); }
    const Array& as_array() const { return std::get<Array>(value); }
    Array& as_array() { return std::get<Array>(value); }
    const Dict& as_dict() const {
        if (is_stream()) return std::get<Stream>(value).dict;
        return std::get<Dict>(value);
    }
    Dict& as_dict() {
        if (is_stream()) return std::get<Stream>(value).dict;
        return std::get<Dict>(value);
    }
    const Stream& as_stream() const { return std::get<Stream>(value); }
    Stream& as_stream() { return std::get<Stream>(value); }
    const Ref& as_ref() const { return std::get<Ref>(value); }
};

inline ObjectPtr make_object(Object::Variant v) {
    return std::make_shared<Object>(std::move(v));
}

inline ObjectPtr make_int(int64_t v) { return make_object(v); }
inline ObjectPtr make_real(double v) { return make_object(v); }
inline ObjectPtr make_name(std::string v) { return make_object(Name{std::move(v)}); }
inline ObjectPtr make_ref(int num, int gen = 0) { return make_object(Ref{num, gen}); }

// Dict lookup; nullptr when missing.
ObjectPtr dict_get(const Dict& dict, const std::string& key);

} // namespace reviewkit::pdf

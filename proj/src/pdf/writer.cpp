#include "reviewkit/pdf/writer.hpp"

#include "reviewkit/pdf/lexer.hpp"
#include "reviewkit/util/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace reviewkit::pdf {

namespace {

void write_value(std::ostringstream& out, const Object& obj);

bool needs_name_escape(uint8_t c) {
    return c <= 0x20 || c > 0x7e || is_pdf_delimiter(c) || c == '#';
}

void write_name(std::ostringstream& out, const Name& name) {
    out << '/';
    for (unsigned char c : name.value) {
        if (needs_name_escape(c)) {
            char buf[4];
            std::snprintf(buf, sizeof(buf), "#%02X", c);
            out << buf;
        } else {
            out << static_cast<char>(c);
        }
    }
}

void write_string(std::ostringstream& out, const std::string& s) {
    out << '(';
    for (char c : s) {
        switch (c) {
        case '(': out << "\\("; break;
        case ')': out << "\\)"; break;
        case '\\': out << "\\\\"; break;
        case '\n': out << "\\n"; break;
        case '\r': out << "\\r"; break;
        default: out << c;
        }
    }
    out << ')';
}

void write_real(std::ostringstream& out, double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        out << static_cast<int64_t>(v);
        return;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    out << s;
}

void write_dict(std::ostringstream& out, const Dict& dict) {
    out << "<<";
    bool first = true;
    for (const auto& [key, value] : dict) {
        if (!first) out << ' ';
        first = false;
        write_name(out, Name{key});
        out << ' ';
        write_value(out, *value);
    }
    out << ">>";
}

void write_value(std::ostringstream& out, const Object& obj) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Null>) {
                out << "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, int64_t>) {
                out << v;
            } else if constexpr (std::is_same_v<T, double>) {
                write_real(out, v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                write_string(out, v);
            } else if constexpr (std::is_same_v<T, Name>) {
                write_name(out, v);
            } else if constexpr (std::is_same_v<T, Array>) {
                out << '[';
                for (size_t i = 0; i < v.size(); ++i) {
                    if (i) out << ' ';
                    write_value(out, *v[i]);
                }
                out << ']';
            } else if constexpr (std::is_same_v<T, Dict>) {
                write_dict(out, v);
            } else if constexpr (std::is_same_v<T, Stream>) {
                Dict dict = v.dict;
                dict["Length"] = make_int(static_cast<int64_t>(v.raw.size()));
                write_dict(out, dict);
                out << "\nstream\n";
                out.write(reinterpret_cast<const char*>(v.raw.data()),
                          static_cast<std::streamsize>(v.raw.size()));
                out << "\nendstream";
            } else if constexpr (std::is_same_v<T, Ref>) {
                out << v.num << ' ' << v.gen << " R";
            }
        },
        obj.value);
}

} // namespace

std::string write_object(const Object& obj) {
    std::ostringstream out;
    write_value(out, obj);
    return out.str();
}

std::vector<uint8_t> write_document(const Document& doc) {
    std::ostringstream out;
    out << "%PDF-1.7\n%\xc2\xa5\xc2\xb1\xc3\xab\n";

    const int max_num = doc.max_object_number();
    std::vector<size_t> offsets(static_cast<size_t>(max_num) + 1, 0);

    for (const auto& [num, obj] : doc.objects()) {
        if (!obj || num <= 0) continue;
        // Cross-reference streams are regenerated as a classic table.
        if (obj->is_stream()) {
            auto type = dict_get(obj->as_stream().dict, "Type");
            if (type && type->is_name() &&
                (type->as_name().value == "XRef" || type->as_name().value == "ObjStm")) {
                continue;
            }
        }
        offsets[static_cast<size_t>(num)] = static_cast<size_t>(out.tellp());
        out << num << " 0 obj\n";
        write_value(out, *obj);
        out << "\nendobj\n";
    }

    const size_t xref_pos = static_cast<size_t>(out.tellp());
    out << "xref\n0 " << (max_num + 1) << "\n";
    out << "0000000000 65535 f \n";
    for (int num = 1; num <= max_num; ++num) {
        char line[32];
        const size_t off = offsets[static_cast<size_t>(num)];
        if (off == 0) {
            std::snprintf(line, sizeof(line), "0000000000 00000 f \n");
        } else {
            std::snprintf(line, sizeof(line), "%010zu 00000 n \n", off);
        }
        out << line;
    }

    Dict trailer = doc.trailer();
    trailer.erase("Prev");
    trailer.erase("XRefStm");
    trailer.erase("Type");
    trailer.erase("W");
    trailer.erase("Index");
    trailer.erase("Filter");
    trailer.erase("DecodeParms");
    trailer.erase("Length");
    trailer["Size"] = make_int(max_num + 1);
    out << "trailer\n";
    std::ostringstream tdict;
    write_dict(tdict, trailer);
    out << tdict.str() << "\nstartxref\n" << xref_pos << "\n%%EOF\n";

    const std::string s = out.str();
    return {s.begin(), s.end()};
}

} // namespace reviewkit::pdf

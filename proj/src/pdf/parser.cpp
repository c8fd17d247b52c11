#include "reviewkit/pdf/document.hpp"
#include "reviewkit/pdf/filters.hpp"
#include "reviewkit/pdf/lexer.hpp"

#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <optional>
#include <set>

namespace reviewkit::pdf {

namespace {

struct XrefEntry {
    int type = 1;        // 1 = offset, 2 = in object stream
    uint64_t offset = 0; // type 1: byte offset; type 2: container object number
    int index = 0;       // type 2: index within the container
};

struct IndirectHeader {
    int num = 0;
    int gen = 0;
};

class Parser {
public:
    explicit Parser(std::span<const uint8_t> bytes) : bytes_(bytes) {}

private:
    std::span<const uint8_t> bytes_;
    std::map<int, XrefEntry> xref_;
    Dict trailer_;
    std::map<int, ObjectPtr> objects_;
    std::set<int> parsing_;  // guards /Length cycles

    // --- object-level parsing -------------------------------------------

    ObjectPtr parse_value(Lexer& lex) {
        Token tok = lex.next();
        return parse_value_from(lex, tok);
    }

    ObjectPtr parse_value_from(Lexer& lex, const Token& tok) {
        switch (tok.kind) {
        case Token::Kind::number_int: {
            // Possible "a b R" reference; rewind when it is not.
            size_t after_int = lex.pos();
            Token t2 = lex.next();
            if (t2.kind == Token::Kind::number_int) {
                Token t3 = lex.next();
                if (t3.kind == Token::Kind::keyword && t3.text == "R") {
                    return make_ref(static_cast<int>(tok.int_value),
                                    static_cast<int>(t2.int_value));
                }
            }
            lex.seek(after_int);
            return make_int(tok.int_value);
        }
        case Token::Kind::number_real:
            return make_real(tok.real_value);
        case Token::Kind::name:
            return make_name(tok.text);
        case Token::Kind::string:
            return make_object(std::string(tok.text));
        case Token::Kind::array_open: {
            Array arr;
            while (true) {
                Token t = lex.next();
                if (t.kind == Token::Kind::array_close) break;
                if (t.kind == Token::Kind::end) {
                    throw Error("malformed_pdf", "unterminated array");
                }
                arr.push_back(parse_value_from(lex, t));
            }
            return make_object(std::move(arr));
        }
        case Token::Kind::dict_open:
            return parse_dict_or_stream(lex);
        case Token::Kind::keyword:
            if (tok.text == "true") return make_object(true);
            if (tok.text == "false") return make_object(false);
            if (tok.text == "null") return make_object(Null{});
            throw Error("malformed_pdf", "unexpected keyword '" + tok.text + "'");
        default:
            throw Error("malformed_pdf", "unexpected token in object");
        }
    }

    ObjectPtr parse_dict_or_stream(Lexer& lex) {
        Dict dict;
        while (true) {
            Token t = lex.next();
            if (t.kind == Token::Kind::dict_close) break;
            if (t.kind != Token::Kind::name) {
                throw Error("malformed_pdf", "dictionary key is not a name");
            }
            dict[t.text] = parse_value(lex);
        }
        size_t after_dict = lex.pos();
        Token t = lex.next();
        if (t.kind == Token::Kind::keyword && t.text == "stream") {
            return parse_stream_body(lex, std::move(dict));
        }
        lex.seek(after_dict);
        return make_object(std::move(dict));
    }

    ObjectPtr parse_stream_body(Lexer& lex, Dict dict) {
        size_t pos = lex.pos();
        // EOL after the 'stream' keyword: CRLF or LF.
        if (pos < bytes_.size() && bytes_[pos] == '\r') ++pos;
        if (pos < bytes_.size() && bytes_[pos] == '\n') ++pos;

        std::optional<uint64_t> length;
        if (auto len_obj = dict_get(dict, "Length")) {
            if (len_obj->is_int() && len_obj->as_int() >= 0) {
                length = static_cast<uint64_t>(len_obj->as_int());
            } else if (len_obj->is_ref()) {
                int target = len_obj->as_ref().num;
                if (auto resolved = fetch_object(target);
                    resolved && resolved->is_int() && resolved->as_int() >= 0) {
                    length = static_cast<uint64_t>(resolved->as_int());
                }
            }
        }

        // A /Length that overruns the buffer or does not land on
        // 'endstream' is treated as lies; scan instead.
        if (length && pos + *length <= bytes_.size()) {
            Lexer check(bytes_, pos + static_cast<size_t>(*length));
            try {
                Token t = check.next();
                if (!(t.kind == Token::Kind::keyword && t.text == "endstream")) {
                    length.reset();
                }
            } catch (const Error&) {
                length.reset();
            }
        } else {
            length.reset();
        }
        const size_t data_end =
            length ? pos + static_cast<size_t>(*length) : find_endstream(pos);

        Stream stream;
        stream.dict = std::move(dict);
        stream.raw.assign(bytes_.begin() + static_cast<long>(pos),
                          bytes_.begin() + static_cast<long>(data_end));
        stream.dict["Length"] = make_int(static_cast<int64_t>(stream.raw.size()));

        Lexer tail(bytes_, data_end);
        Token t = tail.next();
        if (!(t.kind == Token::Kind::keyword && t.text == "endstream")) {
            throw Error("malformed_pdf", "missing endstream");
        }
        lex.seek(tail.pos());
        return make_object(std::move(stream));
    }

    size_t find_endstream(size_t from) const {
        static const char kNeedle[] = "endstream";
        const size_t n = bytes_.size();
        for (size_t i = from; i + 9 <= n; ++i) {
            if (std::memcmp(bytes_.data() + i, kNeedle, 9) == 0) {
                size_t end = i;
                // Trim the EOL that precedes 'endstream'.
                if (end > from && bytes_[end - 1] == '\n') --end;
                if (end > from && bytes_[end - 1] == '\r') --end;
                return end;
            }
        }
        throw Error("malformed_pdf", "unterminated stream");
    }

    std::optional<IndirectHeader> parse_indirect_header(Lexer& lex) {
        Token a = lex.next();
        if (a.kind != Token::Kind::number_int) return std::nullopt;
        Token b = lex.next();
        if (b.kind != Token::Kind::number_int) return std::nullopt;
        Token kw = lex.next();
        if (kw.kind != Token::Kind::keyword || kw.text != "obj") return std::nullopt;
        return IndirectHeader{static_cast<int>(a.int_value), static_cast<int>(b.int_value)};
    }

    // Parses (and caches) the object at its xref offset.
    ObjectPtr fetch_object(int num) {
        if (auto it = objects_.find(num); it != objects_.end()) return it->second;
        auto xit = xref_.find(num);
        if (xit == xref_.end() || xit->second.type != 1) return nullptr;
        if (parsing_.count(num)) return nullptr;
        parsing_.insert(num);
        ObjectPtr obj;
        try {
            Lexer lex(bytes_, static_cast<size_t>(xit->second.offset));
            auto header = parse_indirect_header(lex);
            if (header && header->num == num) {
                obj = parse_value(lex);
            }
        } catch (const Error&) {
            obj = nullptr;
        }
        parsing_.erase(num);
        if (obj) objects_[num] = obj;
        return obj;
    }

    // --- xref chain ------------------------------------------------------

    void add_xref(int num, XrefEntry entry) {
        xref_.emplace(num, entry);  // newest section wins; older /Prev ignored
    }

    void merge_trailer(const Dict& dict) {
        for (const auto& [k, v] : dict) trailer_.emplace(k, v);
    }

    Dict parse_classic_xref(Lexer& lex) {
        while (true) {
            Token t = lex.next();
            if (t.kind == Token::Kind::keyword && t.text == "trailer") {
                Token open = lex.next();
                if (open.kind != Token::Kind::dict_open) {
                    throw Error("malformed_pdf", "trailer is not a dictionary");
                }
                auto dict = parse_dict_or_stream(lex);
                return dict->as_dict();
            }
            if (t.kind != Token::Kind::number_int) {
                throw Error("malformed_pdf", "bad xref section header");
            }
            int start = static_cast<int>(t.int_value);
            Token c = lex.next();
            if (c.kind != Token::Kind::number_int) {
                throw Error("malformed_pdf", "bad xref section count");
            }
            int count = static_cast<int>(c.int_value);
            for (int i = 0; i < count; ++i) {
                Token off = lex.next();
                Token gen = lex.next();
                Token kind = lex.next();
                if (off.kind != Token::Kind::number_int ||
                    gen.kind != Token::Kind::number_int ||
                    kind.kind != Token::Kind::keyword) {
                    throw Error("malformed_pdf", "bad xref entry");
                }
                if (kind.text == "n") {
                    add_xref(start + i, {1, static_cast<uint64_t>(off.int_value), 0});
                }
            }
        }
    }

    Dict parse_xref_stream(const Stream& stream) {
        auto resolve_cb = [this](const ObjectPtr& o) -> ObjectPtr {
            if (o && o->is_ref()) return fetch_object(o->as_ref().num);
            return o;
        };
        DecodedStream decoded = decode_stream(stream, resolve_cb);
        if (decoded.still_dct) throw Error("malformed_pdf", "xref stream uses DCT");

        auto w_obj = dict_get(stream.dict, "W");
        if (!w_obj || !w_obj->is_array() || w_obj->as_array().size() < 3) {
            throw Error("malformed_pdf", "xref stream missing /W");
        }
        int w[3];
        for (int i = 0; i < 3; ++i) {
            const auto& e = w_obj->as_array()[static_cast<size_t>(i)];
            if (!e->is_int()) throw Error("malformed_pdf", "bad /W entry");
            w[i] = static_cast<int>(e->as_int());
        }

        std::vector<std::pair<int, int>> sections;  // (start, count)
        if (auto index = dict_get(stream.dict, "Index"); index && index->is_array()) {
            const auto& arr = index->as_array();
            for (size_t i = 0; i + 1 < arr.size(); i += 2) {
                sections.emplace_back(static_cast<int>(arr[i]->as_int()),
                                      static_cast<int>(arr[i + 1]->as_int()));
            }
        } else {
            auto size = dict_get(stream.dict, "Size");
            if (!size || !size->is_int()) throw Error("malformed_pdf", "xref stream missing /Size");
            sections.emplace_back(0, static_cast<int>(size->as_int()));
        }

        const size_t entry_len = static_cast<size_t>(w[0] + w[1] + w[2]);
        size_t cursor = 0;
        auto read_field = [&](int width) -> uint64_t {
            uint64_t v = width == 0 ? 1 : 0;  // default for omitted type field
            for (int i = 0; i < width; ++i) v = (v << 8) | decoded.bytes[cursor++];
            return v;
        };
        for (auto [start, count] : sections) {
            for (int i = 0; i < count; ++i) {
                if (cursor + entry_len > decoded.bytes.size()) return stream.dict;
                uint64_t type = read_field(w[0]);
                uint64_t f2 = read_field(w[1]);
                uint64_t f3 = read_field(w[2]);
                if (type == 1) {
                    add_xref(start + i, {1, f2, 0});
                } else if (type == 2) {
                    add_xref(start + i, {2, f2, static_cast<int>(f3)});
                }
            }
        }
        return stream.dict;
    }

    // Follows startxref -> /Prev chain, classic tables and xref streams.
    void load_xref_chain() {
        size_t tail_start = bytes_.size() > 2048 ? bytes_.size() - 2048 : 0;
        std::string tail(reinterpret_cast<const char*>(bytes_.data()) + tail_start,
                         bytes_.size() - tail_start);
        size_t sx = tail.rfind("startxref");
        if (sx == std::string::npos) throw Error("malformed_pdf", "missing startxref");
        Lexer lex(bytes_, tail_start + sx + 9);
        Token t = lex.next();
        if (t.kind != Token::Kind::number_int) {
            throw Error("malformed_pdf", "bad startxref offset");
        }

        std::set<uint64_t> seen;
        std::vector<uint64_t> todo{static_cast<uint64_t>(t.int_value)};
        while (!todo.empty()) {
            uint64_t offset = todo.back();
            todo.pop_back();
            if (offset >= bytes_.size() || !seen.insert(offset).second) continue;

            Lexer xl(bytes_, static_cast<size_t>(offset));
            Token first = xl.peek();
            Dict section_trailer;
            if (first.kind == Token::Kind::keyword && first.text == "xref") {
                (void)xl.next();
                section_trailer = parse_classic_xref(xl);
            } else {
                auto header = parse_indirect_header(xl);
                if (!header) throw Error("malformed_pdf", "xref offset points nowhere");
                ObjectPtr obj = parse_value(xl);
                if (!obj->is_stream()) throw Error("malformed_pdf", "expected xref stream");
                objects_[header->num] = obj;
                section_trailer = parse_xref_stream(obj->as_stream());
            }
            merge_trailer(section_trailer);
            if (auto prev = dict_get(section_trailer, "Prev"); prev && prev->is_int()) {
                todo.push_back(static_cast<uint64_t>(prev->as_int()));
            }
            if (auto hybrid = dict_get(section_trailer, "XRefStm"); hybrid && hybrid->is_int()) {
                todo.push_back(static_cast<uint64_t>(hybrid->as_int()));
            }
        }
    }

    void load_object_streams() {
        std::vector<std::pair<int, XrefEntry>> compressed;
        for (const auto& [num, entry] : xref_) {
            if (entry.type == 2) compressed.emplace_back(num, entry);
        }
        for (const auto& [num, entry] : compressed) {
            if (objects_.count(num)) continue;
            ObjectPtr container = fetch_object(static_cast<int>(entry.offset));
            if (!container || !container->is_stream()) continue;
            try {
                extract_from_object_stream(container->as_stream(), num, entry.index);
            } catch (const Error&) {
                // leave missing; resolve() returns nullptr
            }
        }
    }

    void extract_from_object_stream(const Stream& stream, int want_num, int want_index) {
        auto resolve_cb = [this](const ObjectPtr& o) -> ObjectPtr {
            if (o && o->is_ref()) return fetch_object(o->as_ref().num);
            return o;
        };
        DecodedStream decoded = decode_stream(stream, resolve_cb);
        auto n_obj = dict_get(stream.dict, "N");
        auto first_obj = dict_get(stream.dict, "First");
        if (!n_obj || !n_obj->is_int() || !first_obj || !first_obj->is_int()) {
            throw Error("malformed_pdf", "object stream missing /N or /First");
        }
        const int n = static_cast<int>(n_obj->as_int());
        const size_t first = static_cast<size_t>(first_obj->as_int());

        Lexer header(decoded.bytes);
        std::vector<std::pair<int, size_t>> offsets;
        for (int i = 0; i < n; ++i) {
            Token num = header.next();
            Token off = header.next();
            if (num.kind != Token::Kind::number_int || off.kind != Token::Kind::number_int) {
                throw Error("malformed_pdf", "bad object stream index");
            }
            offsets.emplace_back(static_cast<int>(num.int_value),
                                 first + static_cast<size_t>(off.int_value));
        }
        (void)want_num;
        (void)want_index;
        // Decode every member while we are here; later lookups hit the cache.
        for (int i = 0; i < n; ++i) {
            auto [obj_num, obj_off] = offsets[static_cast<size_t>(i)];
            if (objects_.count(obj_num)) continue;
            if (obj_off >= decoded.bytes.size()) continue;
            try {
                Lexer ol(decoded.bytes, obj_off);
                objects_[obj_num] = parse_value(ol);
            } catch (const Error&) {
                // skip unparseable member
            }
        }
    }

    // --- fallback: linear object scan -------------------------------------

    void fallback_scan() {
        xref_.clear();
        objects_.clear();
        trailer_.clear();

        const size_t n = bytes_.size();
        size_t i = 0;
        while (i + 3 < n) {
            if (bytes_[i] == 'o' && bytes_[i + 1] == 'b' && bytes_[i + 2] == 'j' &&
                (i + 3 >= n || is_pdf_whitespace(bytes_[i + 3]) ||
                 is_pdf_delimiter(bytes_[i + 3]))) {
                // Walk back over "num gen " to the object header start.
                size_t back = i;
                auto skip_ws_back = [&](size_t p) {
                    while (p > 0 && is_pdf_whitespace(bytes_[p - 1])) --p;
                    return p;
                };
                auto skip_digits_back = [&](size_t p) {
                    size_t q = p;
                    while (q > 0 && std::isdigit(bytes_[q - 1])) --q;
                    return q;
                };
                size_t p = skip_ws_back(back);
                size_t gen_start = skip_digits_back(p);
                if (gen_start < p) {
                    size_t p2 = skip_ws_back(gen_start);
                    size_t num_start = skip_digits_back(p2);
                    if (num_start < p2 && (num_start == 0 ||
                                           is_pdf_whitespace(bytes_[num_start - 1]) ||
                                           is_pdf_delimiter(bytes_[num_start - 1]))) {
                        try {
                            Lexer lex(bytes_, num_start);
                            auto header = parse_indirect_header(lex);
                            if (header) {
                                ObjectPtr obj = parse_value(lex);
                                objects_[header->num] = obj;
                                i = lex.pos();
                                continue;
                            }
                        } catch (const Error&) {
                            // resync after this 'obj'
                        }
                    }
                }
            }
            ++i;
        }
        if (objects_.empty()) throw Error("malformed_pdf", "no objects found");

        // Recover a trailer: last 'trailer' dict wins, else synthesize from
        // the catalog object.
        std::string all(reinterpret_cast<const char*>(bytes_.data()), bytes_.size());
        size_t tpos = all.rfind("trailer");
        bool have_root = false;
        if (tpos != std::string::npos) {
            try {
                Lexer lex(bytes_, tpos + 7);
                Token open = lex.next();
                if (open.kind == Token::Kind::dict_open) {
                    auto dict = parse_dict_or_stream(lex);
                    merge_trailer(dict->as_dict());
                    have_root = dict_get(trailer_, "Root") != nullptr;
                }
            } catch (const Error&) {
            }
        }
        if (!have_root) {
            for (const auto& [num, obj] : objects_) {
                if (!obj || !(obj->is_dict() || obj->is_stream())) continue;
                auto type = dict_get(obj->as_dict(), "Type");
                if (type && type->is_name() && type->as_name().value == "Catalog") {
                    trailer_["Root"] = make_ref(num);
                    break;
                }
            }
        }
        if (!dict_get(trailer_, "Root")) {
            throw Error("malformed_pdf", "cannot locate document catalog");
        }
    }

public:
    void run_impl(std::map<int, ObjectPtr>& objects_out, Dict& trailer_out) {
        std::string head(reinterpret_cast<const char*>(bytes_.data()),
                         std::min<size_t>(bytes_.size(), 1024));
        if (head.find("%PDF-") == std::string::npos) {
            throw Error("malformed_pdf", "missing %PDF header");
        }

        bool xref_ok = true;
        try {
            load_xref_chain();
            // Materialize every type-1 object.
            for (const auto& [num, entry] : xref_) {
                if (entry.type == 1) (void)fetch_object(num);
            }
            load_object_streams();
            if (!dict_get(trailer_, "Root")) xref_ok = false;
        } catch (const Error&) {
            xref_ok = false;
        }
        if (!xref_ok) {
            fallback_scan();
        }

        if (dict_get(trailer_, "Encrypt")) {
            throw Error("encrypted_pdf", "document is password protected");
        }

        objects_out = std::move(objects_);
        trailer_out = std::move(trailer_);
    }
};

} // namespace

Document Document::parse(std::span<const uint8_t> bytes) {
    Document doc;
    Parser parser(bytes);
    parser.run_impl(doc.objects_, doc.trailer_);
    return doc;
}

} // namespace reviewkit::pdf

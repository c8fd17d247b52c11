#include "reviewkit/util/strings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace reviewkit::strings {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// UTF-8 sequences for common Latin diacritics -> ASCII base letters.
// Enough for bibliographic normalization of typical author names.
const std::unordered_map<std::string, std::string>& diacritic_table() {
    static const std::unordered_map<std::string, std::string> table = {
        {"à", "a"}, {"á", "a"}, {"â", "a"}, {"ã", "a"},
        {"ä", "a"}, {"å", "a"}, {"æ", "ae"},
        {"ç", "c"}, {"è", "e"}, {"é", "e"}, {"ê", "e"},
        {"ë", "e"}, {"ì", "i"}, {"í", "i"}, {"î", "i"},
        {"ï", "i"}, {"ñ", "n"}, {"ò", "o"}, {"ó", "o"},
        {"ô", "o"}, {"õ", "o"}, {"ö", "o"}, {"ø", "o"},
        {"ù", "u"}, {"ú", "u"}, {"û", "u"}, {"ü", "u"},
        {"ý", "y"}, {"ÿ", "y"}, {"ß", "ss"},
        {"À", "a"}, {"Á", "a"}, {"Â", "a"}, {"Ã", "a"},
        {"Ä", "a"}, {"Å", "a"}, {"Æ", "ae"},
        {"Ç", "c"}, {"È", "e"}, {"É", "e"}, {"Ê", "e"},
        {"Ë", "e"}, {"Ì", "i"}, {"Í", "i"}, {"Î", "i"},
        {"Ï", "i"}, {"Ñ", "n"}, {"Ò", "o"}, {"Ó", "o"},
        {"Ô", "o"}, {"Õ", "o"}, {"Ö", "o"}, {"Ø", "o"},
        {"Ù", "u"}, {"Ú", "u"}, {"Û", "u"}, {"Ü", "u"},
        {"Ý", "y"},
        {"ć", "c"}, {"č", "c"}, {"ı", "i"}, {"ł", "l"},
        {"ń", "n"}, {"ő", "o"}, {"ř", "r"}, {"ś", "s"},
        {"š", "s"}, {"ů", "u"}, {"ź", "z"}, {"ż", "z"},
        {"ž", "z"}, {"Ć", "c"}, {"Č", "c"}, {"Ł", "l"},
        {"Ń", "n"}, {"Ő", "o"}, {"Ř", "r"}, {"Ś", "s"},
        {"Š", "s"}, {"Ů", "u"}, {"Ź", "z"}, {"Ż", "z"},
        {"Ž", "z"},
    };
    return table;
}

} // namespace

std::string normalize_lf(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

bool contains_collapsed(std::string_view hay, std::string_view needle) {
    const std::string h = collapse_whitespace(hay);
    const std::string n = collapse_whitespace(needle);
    if (n.empty()) return false;
    return h.find(n) != std::string::npos;
}

std::string match_key(std::string_view text) {
    std::string ascii;
    ascii.reserve(text.size());
    const auto& table = diacritic_table();
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        size_t len = 1;
        if ((c & 0xe0) == 0xc0) len = 2;
        else if ((c & 0xf0) == 0xe0) len = 3;
        else if ((c & 0xf8) == 0xf0) len = 4;
        if (len > 1 && i + len <= text.size()) {
            auto it = table.find(std::string(text.substr(i, len)));
            if (it != table.end()) {
                ascii += it->second;
            }
            // Unknown multibyte sequences are dropped from the key.
            i += len;
            continue;
        }
        if (std::isalnum(c)) {
            ascii.push_back(static_cast<char>(std::tolower(c)));
        } else {
            ascii.push_back(' ');
        }
        ++i;
    }
    return collapse_whitespace(ascii);
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::string trim(std::string_view text) {
    size_t b = 0;
    size_t e = text.size();
    while (b < e && is_space(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

std::string format_decimal(double value, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, value);
    std::string out(buf);
    if (out == "-0" || out.rfind("-0.", 0) == 0) {
        bool all_zero = true;
        for (char c : out)
            if (c != '-' && c != '0' && c != '.') { all_zero = false; break; }
        if (all_zero) out.erase(0, 1);
    }
    return out;
}

} // namespace reviewkit::strings

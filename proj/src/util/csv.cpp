#include "reviewkit/util/csv.hpp"

#include "reviewkit/util/error.hpp"

#include <ostream>

namespace reviewkit::csv {

std::string escape(std::string_view field) {
    bool needs_quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quote) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << "\r\n";
}

std::vector<std::vector<std::string>> parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    size_t line = 1;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started && !field.empty()) {
                throw Error("csv_parse", "row " + std::to_string(line) +
                                             ": quote inside unquoted field");
            }
            in_quotes = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_row();
            ++line;
            break;
        case '\n':
            end_row();
            ++line;
            break;
        default:
            field.push_back(c);
            field_started = true;
            break;
        }
    }
    if (in_quotes) {
        throw Error("csv_parse", "row " + std::to_string(line) + ": unterminated quote");
    }
    if (field_started || !row.empty()) end_row();
    return rows;
}

} // namespace reviewkit::csv

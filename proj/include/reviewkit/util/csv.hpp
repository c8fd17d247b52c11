#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace reviewkit::csv {

// RFC 4180: quote fields containing comma, quote or newline; double
// embedded quotes. Rows end with CRLF.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Parses a full CSV document (quoted fields, embedded newlines).
// Throws reviewkit::Error("csv_parse", ...) naming the offending row.
std::vector<std::vector<std::string>> parse(std::string_view text);

} // namespace reviewkit::csv

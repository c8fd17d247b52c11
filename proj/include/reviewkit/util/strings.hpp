#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reviewkit::strings {

// CRLF / lone CR -> LF.
std::string normalize_lf(std::string_view text);

// Trims and collapses every run of whitespace to a single space.
std::string collapse_whitespace(std::string_view text);

// True when `needle` occurs in `hay` after both are whitespace-collapsed.
// Used for excerpt verification, where judges re-wrap quoted lines.
bool contains_collapsed(std::string_view hay, std::string_view needle);

// Lowercases, transliterates common Latin diacritics to ASCII, drops
// punctuation and collapses whitespace. Bibliographic match key.
std::string match_key(std::string_view text);

std::string to_lower(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

std::string trim(std::string_view text);

// Fixed-point decimal rendering with round-half-away-from-zero.
std::string format_decimal(double value, int places);

} // namespace reviewkit::strings

#pragma once

#include "reviewkit/pdf/document.hpp"

namespace reviewkit::pdf {

// Serializes the full object table with a classic xref section. Output
// is deterministic: objects ordered by number, dict keys sorted (Dict is
// an ordered map).
std::vector<uint8_t> write_document(const Document& doc);

// Serializes one object value (no indirect wrapper). Exposed for tests.
std::string write_object(const Object& obj);

} // namespace reviewkit::pdf

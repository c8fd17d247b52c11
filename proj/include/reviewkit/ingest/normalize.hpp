#pragma once

#include "reviewkit/ingest/types.hpp"

#include <span>

namespace reviewkit::ingest {

// Resamples every placed raster image to the target density (both down-
// and up-sampling) and reserializes the document. Page count and content
// streams are untouched; vector graphics are untouched.
//
// Errors: "malformed_pdf" (unparseable input, or a raster image in an
// unsupported format), "encrypted_pdf", "invalid_argument" (dpi <= 0).
NormalizedPdf normalize_pdf(std::span<const uint8_t> raw_pdf, int target_dpi,
                            std::string paper_id = "");

} // namespace reviewkit::ingest

#pragma once

#include "reviewkit/ingest/ocr.hpp"
#include "reviewkit/ingest/types.hpp"

#include <filesystem>
#include <span>

namespace reviewkit::ingest {

// Error("id_mismatch") when the parts disagree on the paper id.
PaperBundle build_bundle(NormalizedPdf pdf, MarkdownDoc markdown, PaperMetadata metadata = {});

// Degraded bundle for OCR failures: markdown is replaced by a notice
// string so downstream stages still receive both attachment slots.
PaperBundle build_bundle_degraded(NormalizedPdf pdf, const std::string& notice,
                                  PaperMetadata metadata = {});

// On-disk layout: <dir>/paper.pdf, <dir>/paper.md, <dir>/bundle.json.
void write_bundle_dir(const PaperBundle& bundle, const std::filesystem::path& dir);
PaperBundle load_bundle_dir(const std::filesystem::path& dir);

// Full ingest: normalize, OCR (degrading on OCR failure), bundle.
struct IngestOptions {
    int target_dpi = kDefaultTargetDpi;
    bool degrade_on_ocr_failure = true;
};
PaperBundle ingest_pdf(std::span<const uint8_t> raw_pdf, OcrBackend& ocr,
                       const IngestOptions& options = {}, std::string paper_id = "",
                       PaperMetadata metadata = {});

} // namespace reviewkit::ingest

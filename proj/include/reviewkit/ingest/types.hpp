#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace reviewkit::ingest {

struct ImageInfo {
    int object_number = 0;
    std::string name;     // resource name on the page, e.g. "Im0"
    int width_px = 0;
    int height_px = 0;
    double display_width_pt = 0.0;
    double display_height_pt = 0.0;
    double dpi_x = 0.0;   // 0 when the image is never placed on a page
    double dpi_y = 0.0;
    bool resampled = false;
};

struct PageInfo {
    int index = 0;
    std::string content_digest;  // sha256 of the decoded content stream
    std::vector<ImageInfo> images;
};

struct NormalizedPdf {
    std::string paper_id;
    std::vector<uint8_t> bytes;  // serialized normalized document
    std::vector<PageInfo> pages;
    int image_dpi = 0;           // the configured target
    uint64_t byte_size = 0;      // of `bytes`
    std::string source_hash;     // sha256 of the raw input

    size_t page_count() const { return pages.size(); }
};

struct MarkdownDoc {
    std::string paper_id;
    std::string text;
    // (page index, character offset); strictly increasing offsets.
    std::vector<std::pair<int, size_t>> page_anchors;
    std::string ocr_engine_id;
};

struct PaperMetadata {
    std::string title;
    std::string venue;
    std::string track;
};

struct PaperBundle {
    std::string paper_id;
    NormalizedPdf pdf;
    MarkdownDoc markdown;
    PaperMetadata metadata;
    bool degraded = false;  // markdown carries a notice instead of OCR output
};

constexpr int kDefaultTargetDpi = 250;

} // namespace reviewkit::ingest

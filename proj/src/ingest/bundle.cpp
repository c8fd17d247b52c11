#include "reviewkit/ingest/bundle.hpp"

#include "reviewkit/ingest/normalize.hpp"
#include "reviewkit/util/digest.hpp"
#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"

#include <json.hpp>

namespace reviewkit::ingest {

using nlohmann::json;

PaperBundle build_bundle(NormalizedPdf pdf, MarkdownDoc markdown, PaperMetadata metadata) {
    if (pdf.paper_id != markdown.paper_id) {
        throw Error("id_mismatch", "pdf is '" + pdf.paper_id + "' but markdown is '" +
                                       markdown.paper_id + "'");
    }
    PaperBundle bundle;
    bundle.paper_id = pdf.paper_id;
    bundle.pdf = std::move(pdf);
    bundle.markdown = std::move(markdown);
    bundle.metadata = std::move(metadata);
    return bundle;
}

PaperBundle build_bundle_degraded(NormalizedPdf pdf, const std::string& notice,
                                  PaperMetadata metadata) {
    MarkdownDoc md;
    md.paper_id = pdf.paper_id;
    md.ocr_engine_id = "none";
    md.text = notice.empty()
                  ? "[markdown unavailable: OCR failed for this document; "
                    "review stages receive the PDF only]"
                  : notice;
    PaperBundle bundle = build_bundle(std::move(pdf), std::move(md), std::move(metadata));
    bundle.degraded = true;
    return bundle;
}

void write_bundle_dir(const PaperBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    fs::write_bytes(dir / "paper.pdf", bundle.pdf.bytes.data(), bundle.pdf.bytes.size());
    fs::write_text(dir / "paper.md", bundle.markdown.text);

    json manifest;
    manifest["paper_id"] = bundle.paper_id;
    manifest["source_hash"] = bundle.pdf.source_hash;
    manifest["normalized_hash"] = digest::sha256_hex(bundle.pdf.bytes);
    manifest["image_dpi"] = bundle.pdf.image_dpi;
    manifest["byte_size"] = bundle.pdf.byte_size;
    manifest["page_count"] = bundle.pdf.pages.size();
    manifest["ocr_engine_id"] = bundle.markdown.ocr_engine_id;
    manifest["degraded"] = bundle.degraded;
    manifest["page_anchors"] = json::array();
    for (const auto& [page, offset] : bundle.markdown.page_anchors) {
        manifest["page_anchors"].push_back({page, offset});
    }
    manifest["pages"] = json::array();
    for (const auto& page : bundle.pdf.pages) {
        json p;
        p["index"] = page.index;
        p["content_digest"] = page.content_digest;
        p["images"] = json::array();
        for (const auto& img : page.images) {
            p["images"].push_back({{"object", img.object_number},
                                   {"name", img.name},
                                   {"width_px", img.width_px},
                                   {"height_px", img.height_px},
                                   {"display_width_pt", img.display_width_pt},
                                   {"display_height_pt", img.display_height_pt},
                                   {"dpi_x", img.dpi_x},
                                   {"dpi_y", img.dpi_y},
                                   {"resampled", img.resampled}});
        }
        manifest["pages"].push_back(std::move(p));
    }
    json meta;
    meta["title"] = bundle.metadata.title;
    meta["venue"] = bundle.metadata.venue;
    meta["track"] = bundle.metadata.track;
    manifest["metadata"] = std::move(meta);

    fs::write_text(dir / "bundle.json", manifest.dump(2) + "\n");
}

PaperBundle load_bundle_dir(const std::filesystem::path& dir) {
    json manifest = json::parse(fs::read_text(dir / "bundle.json"));
    PaperBundle bundle;
    bundle.paper_id = manifest.at("paper_id").get<std::string>();
    bundle.degraded = manifest.value("degraded", false);

    bundle.pdf.paper_id = bundle.paper_id;
    bundle.pdf.bytes = fs::read_bytes(dir / "paper.pdf");
    bundle.pdf.byte_size = bundle.pdf.bytes.size();
    bundle.pdf.image_dpi = manifest.value("image_dpi", kDefaultTargetDpi);
    bundle.pdf.source_hash = manifest.value("source_hash", "");
    if (manifest.contains("pages")) {
        for (const auto& p : manifest["pages"]) {
            PageInfo page;
            page.index = p.value("index", 0);
            page.content_digest = p.value("content_digest", "");
            if (p.contains("images")) {
                for (const auto& im : p["images"]) {
                    ImageInfo img;
                    img.object_number = im.value("object", 0);
                    img.name = im.value("name", "");
                    img.width_px = im.value("width_px", 0);
                    img.height_px = im.value("height_px", 0);
                    img.display_width_pt = im.value("display_width_pt", 0.0);
                    img.display_height_pt = im.value("display_height_pt", 0.0);
                    img.dpi_x = im.value("dpi_x", 0.0);
                    img.dpi_y = im.value("dpi_y", 0.0);
                    img.resampled = im.value("resampled", false);
                    page.images.push_back(std::move(img));
                }
            }
            bundle.pdf.pages.push_back(std::move(page));
        }
    }

    bundle.markdown.paper_id = bundle.paper_id;
    bundle.markdown.text = fs::read_text(dir / "paper.md");
    bundle.markdown.ocr_engine_id = manifest.value("ocr_engine_id", "");
    if (manifest.contains("page_anchors")) {
        for (const auto& a : manifest["page_anchors"]) {
            bundle.markdown.page_anchors.emplace_back(a.at(0).get<int>(),
                                                      a.at(1).get<size_t>());
        }
    }

    json meta = manifest.value("metadata", json::object());
    bundle.metadata.title = meta.value("title", "");
    bundle.metadata.venue = meta.value("venue", "");
    bundle.metadata.track = meta.value("track", "");
    return bundle;
}

PaperBundle ingest_pdf(std::span<const uint8_t> raw_pdf, OcrBackend& ocr,
                       const IngestOptions& options, std::string paper_id,
                       PaperMetadata metadata) {
    NormalizedPdf pdf = normalize_pdf(raw_pdf, options.target_dpi, std::move(paper_id));
    try {
        MarkdownDoc md = convert_to_markdown(pdf, ocr);
        return build_bundle(std::move(pdf), std::move(md), std::move(metadata));
    } catch (const Error& e) {
        if (!options.degrade_on_ocr_failure || e.code() == "empty_document") throw;
        return build_bundle_degraded(std::move(pdf),
                                     std::string("[markdown unavailable: ") + e.what() + "]",
                                     std::move(metadata));
    }
}

} // namespace reviewkit::ingest

#include "reviewkit/ingest/ocr.hpp"

#include "reviewkit/util/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <sstream>

namespace reviewkit::ingest {

using nlohmann::json;

FixtureOcr::FixtureOcr(std::map<std::string, std::string> scripted_markdown)
    : scripted_(std::move(scripted_markdown)) {}

MarkdownDoc FixtureOcr::run(const NormalizedPdf& pdf) {
    MarkdownDoc doc;
    doc.paper_id = pdf.paper_id;
    doc.ocr_engine_id = engine_id();

    auto it = scripted_.find(pdf.paper_id);
    if (it != scripted_.end()) {
        doc.text = it->second;
        // Anchors from explicit page markers, in order of appearance.
        const std::string marker = "<!-- page ";
        size_t pos = 0;
        int page = 0;
        while ((pos = doc.text.find(marker, pos)) != std::string::npos) {
            doc.page_anchors.emplace_back(page++, pos);
            pos += marker.size();
        }
        if (doc.page_anchors.empty() && !pdf.pages.empty()) {
            doc.page_anchors.emplace_back(0, 0);
            for (size_t p = 1; p < pdf.pages.size(); ++p) {
                doc.page_anchors.emplace_back(static_cast<int>(p),
                                              std::min(doc.text.size(), p));
            }
        }
        return doc;
    }

    std::ostringstream text;
    text << "# Document " << pdf.paper_id << "\n";
    for (size_t p = 0; p < pdf.pages.size(); ++p) {
        doc.page_anchors.emplace_back(static_cast<int>(p), text.str().size());
        text << "\n<!-- page " << p << " -->\n\n"
             << "Content of page " << (p + 1) << " (digest "
             << pdf.pages[p].content_digest.substr(0, 12) << ").\n";
    }
    doc.text = text.str();
    return doc;
}

HttpOcr::HttpOcr(std::string base_url, gateway::RetryPolicy policy,
                 std::shared_ptr<Sleeper> sleeper)
    : base_url_(std::move(base_url)), policy_(policy), sleeper_(std::move(sleeper)) {}

MarkdownDoc HttpOcr::run(const NormalizedPdf& pdf) {
    std::string last_cause;
    for (int attempt = 0; attempt <= policy_.max_retries; ++attempt) {
        httplib::Client client(base_url_);
        client.set_read_timeout(600);
        auto res = client.Post("/v1/ocr",
                               reinterpret_cast<const char*>(pdf.bytes.data()),
                               pdf.bytes.size(), "application/pdf");
        if (res && res->status == 200) {
            json body = json::parse(res->body, nullptr, false);
            if (body.is_discarded() || !body.contains("markdown")) {
                throw Error("ocr_protocol", "OCR endpoint returned malformed JSON");
            }
            MarkdownDoc doc;
            doc.paper_id = pdf.paper_id;
            doc.ocr_engine_id = engine_id();
            doc.text = body["markdown"].get<std::string>();
            if (body.contains("page_anchors")) {
                for (const auto& a : body["page_anchors"]) {
                    doc.page_anchors.emplace_back(a.at(0).get<int>(), a.at(1).get<size_t>());
                }
            }
            return doc;
        }
        last_cause = res ? "status " + std::to_string(res->status)
                         : "transport: " + httplib::to_string(res.error());
        if (attempt < policy_.max_retries) {
            sleeper_->sleep_for(policy_.nominal_delay(attempt));
        }
    }
    throw Error("ocr_unavailable", "OCR endpoint unreachable: " + last_cause);
}

MarkdownDoc convert_to_markdown(const NormalizedPdf& pdf, OcrBackend& ocr) {
    if (pdf.pages.empty()) {
        throw Error("empty_document", "pdf has no pages");
    }
    MarkdownDoc doc = ocr.run(pdf);
    doc.paper_id = pdf.paper_id;
    if (doc.ocr_engine_id.empty()) doc.ocr_engine_id = ocr.engine_id();
    if (doc.text.empty()) {
        throw Error("empty_document", "OCR produced no extractable content");
    }

    if (doc.page_anchors.size() < pdf.pages.size()) {
        throw Error("ocr_protocol",
                    "page anchors cover " + std::to_string(doc.page_anchors.size()) +
                        " of " + std::to_string(pdf.pages.size()) + " pages");
    }
    for (size_t i = 1; i < doc.page_anchors.size(); ++i) {
        if (doc.page_anchors[i].second <= doc.page_anchors[i - 1].second) {
            throw Error("ocr_protocol", "page anchors are not increasing");
        }
    }
    for (const auto& [page, offset] : doc.page_anchors) {
        if (offset > doc.text.size()) {
            throw Error("ocr_protocol", "page anchor beyond end of text");
        }
    }
    return doc;
}

} // namespace reviewkit::ingest

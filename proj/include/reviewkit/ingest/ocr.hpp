#pragma once

#include "reviewkit/gateway/retry.hpp"
#include "reviewkit/ingest/types.hpp"

#include <filesystem>
#include <map>
#include <memory>

namespace reviewkit::ingest {

class OcrBackend {
public:
    virtual ~OcrBackend() = default;

    // Errors: "ocr_unavailable" after exhausting any transport retries.
    virtual MarkdownDoc run(const NormalizedPdf& pdf) = 0;
    virtual std::string engine_id() const = 0;
};

// Scripted offline backend. Looks up markdown by paper_id; falls back to
// a deterministic synthesized document when no script entry exists.
// Page anchors for scripted entries come from "<!-- page N -->" markers;
// synthesized docs always carry one anchor per page.
class FixtureOcr final : public OcrBackend {
public:
    FixtureOcr() = default;
    explicit FixtureOcr(std::map<std::string, std::string> scripted_markdown);

    MarkdownDoc run(const NormalizedPdf& pdf) override;
    std::string engine_id() const override { return "fixture-ocr/1"; }

private:
    std::map<std::string, std::string> scripted_;
};

// Remote OCR endpoint: POST the normalized pdf, receive markdown plus
// anchors. Transport failures retry per the policy, then surface as
// "ocr_unavailable".
class HttpOcr final : public OcrBackend {
public:
    HttpOcr(std::string base_url, gateway::RetryPolicy policy = {},
            std::shared_ptr<Sleeper> sleeper = std::make_shared<RealSleeper>());

    MarkdownDoc run(const NormalizedPdf& pdf) override;
    std::string engine_id() const override { return "remote-ocr:" + base_url_; }

private:
    std::string base_url_;
    gateway::RetryPolicy policy_;
    std::shared_ptr<Sleeper> sleeper_;
};

// Validating conversion front-end: rejects empty documents, checks anchor
// monotonicity and page coverage, stamps ids.
//
// Errors: "empty_document" (no pages or no extractable content),
// "ocr_unavailable" (propagated), "ocr_protocol" (backend output violates
// the anchor contract).
MarkdownDoc convert_to_markdown(const NormalizedPdf& pdf, OcrBackend& ocr);

} // namespace reviewkit::ingest

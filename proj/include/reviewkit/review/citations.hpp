#pragma once

#include "reviewkit/review/review.hpp"
#include "reviewkit/util/error.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace reviewkit::review {

// Lenient APA-shape extraction: authors up to the "(year)", title up to
// the following period, venue afterwards. parsed_ok is false when the
// year marker is missing.
struct ParsedCitation {
    std::string authors;
    std::string title;
    std::string venue;
    int year = 0;
    bool parsed_ok = false;
};

ParsedCitation parse_apa(const std::string& raw);

struct BibEntry {
    std::string authors;
    std::string title;
    std::string venue;
    int year = 0;
};

struct Resolution {
    std::optional<BibEntry> match;
    double confidence = 0.0;  // 0 = no match, 1 = full bibliographic agreement
    std::string note;
};

class CitationResolver {
public:
    virtual ~CitationResolver() = default;
    // Errors: "resolver_unavailable" when the backing service is down.
    virtual Resolution resolve(const ParsedCitation& citation) = 0;
};

// File-backed index: one JSON record per line with keys
// authors/title/venue/year. Matching is by normalized title, author
// family-name overlap, then venue/year agreement.
class OfflineIndexResolver final : public CitationResolver {
public:
    explicit OfflineIndexResolver(std::vector<BibEntry> entries);
    static OfflineIndexResolver from_jsonl_file(const std::filesystem::path& path);

    Resolution resolve(const ParsedCitation& citation) override;

private:
    std::vector<BibEntry> entries_;
};

enum class Verdict { valid, unsure, fake };
const char* to_string(Verdict v);

struct CitationRecord {
    std::string raw;
    ParsedCitation parsed;
    Verdict verdict = Verdict::fake;
    double confidence = 0.0;
    std::string evidence;
};

struct CitationAudit {
    std::vector<CitationRecord> citations;

    size_t count(Verdict v) const;
};

struct AuditOptions {
    // Confidence below this (but above zero) maps to "unsure".
    double unsure_threshold = 0.8;
};

// One verdict per reference string in the review.
CitationAudit audit_citations(const Review& review, CitationResolver& resolver,
                              const AuditOptions& options = {});

} // namespace reviewkit::review

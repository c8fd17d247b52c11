#include "reviewkit/review/citations.hpp"

#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <algorithm>
#include <regex>
#include <set>

namespace reviewkit::review {

using nlohmann::json;

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::valid: return "valid";
    case Verdict::unsure: return "unsure";
    case Verdict::fake: return "fake";
    }
    return "?";
}

ParsedCitation parse_apa(const std::string& raw) {
    ParsedCitation out;
    static const std::regex year_re(R"(\((\d{4})[a-z]?\))");
    std::smatch m;
    if (!std::regex_search(raw, m, year_re)) {
        return out;  // parsed_ok stays false
    }
    out.year = std::stoi(m[1]);
    out.authors = strings::trim(raw.substr(0, static_cast<size_t>(m.position(0))));
    while (!out.authors.empty() && (out.authors.back() == '.' || out.authors.back() == ','))
        out.authors.pop_back();

    std::string rest = strings::trim(raw.substr(static_cast<size_t>(m.position(0) + m.length(0))));
    if (!rest.empty() && rest[0] == '.') rest = strings::trim(rest.substr(1));

    // Title runs to the first period that is not part of an abbreviation
    // like "vs." or a single initial.
    size_t dot = std::string::npos;
    for (size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] != '.') continue;
        bool initial = i >= 1 && i + 1 < rest.size() &&
                       isupper(static_cast<unsigned char>(rest[i - 1])) &&
                       (i < 2 || !isalpha(static_cast<unsigned char>(rest[i - 2])));
        if (!initial) {
            dot = i;
            break;
        }
    }
    if (dot == std::string::npos) {
        out.title = strings::trim(rest);
    } else {
        out.title = strings::trim(rest.substr(0, dot));
        out.venue = strings::trim(rest.substr(dot + 1));
        while (!out.venue.empty() && out.venue.back() == '.') out.venue.pop_back();
        out.venue = strings::trim(out.venue);
    }
    out.parsed_ok = !out.title.empty();
    return out;
}

namespace {

// Family names from an author string: last word of each comma/&-separated
// author chunk, skipping bare initials.
std::set<std::string> family_names(const std::string& authors) {
    std::set<std::string> names;
    std::string normalized = strings::match_key(authors);
    for (const auto& word : strings::split(normalized, ' ')) {
        if (word.size() >= 3 && word != "and") names.insert(word);
    }
    return names;
}

double author_overlap(const std::string& a, const std::string& b) {
    auto na = family_names(a);
    auto nb = family_names(b);
    if (na.empty() || nb.empty()) return 0.0;
    size_t common = 0;
    for (const auto& n : na)
        if (nb.count(n)) ++common;
    return static_cast<double>(common) / static_cast<double>(std::max(na.size(), nb.size()));
}

} // namespace

OfflineIndexResolver::OfflineIndexResolver(std::vector<BibEntry> entries)
    : entries_(std::move(entries)) {}

OfflineIndexResolver OfflineIndexResolver::from_jsonl_file(const std::filesystem::path& path) {
    std::vector<BibEntry> entries;
    const std::string text = fs::read_text(path);
    for (const auto& line : strings::split(text, '\n')) {
        const std::string trimmed = strings::trim(line);
        if (trimmed.empty()) continue;
        json doc = json::parse(trimmed, nullptr, false);
        if (doc.is_discarded()) {
            throw Error("resolver_unavailable", "bad index line: " + trimmed.substr(0, 60));
        }
        BibEntry entry;
        entry.authors = doc.value("authors", "");
        entry.title = doc.value("title", "");
        entry.venue = doc.value("venue", "");
        entry.year = doc.value("year", 0);
        entries.push_back(std::move(entry));
    }
    return OfflineIndexResolver(std::move(entries));
}

Resolution OfflineIndexResolver::resolve(const ParsedCitation& citation) {
    const std::string title_key = strings::match_key(citation.title);
    if (title_key.empty()) return {};

    Resolution best;
    for (const auto& entry : entries_) {
        if (strings::match_key(entry.title) != title_key) continue;
        double authors = author_overlap(citation.authors, entry.authors);
        if (authors == 0.0) continue;

        bool venue_ok = strings::match_key(entry.venue) == strings::match_key(citation.venue);
        bool year_ok = citation.year == 0 || entry.year == 0 || citation.year == entry.year;

        Resolution candidate;
        candidate.match = entry;
        // Title match carries most of the weight; authors the rest. Venue
        // disagreement is reported via the note, not the score.
        candidate.confidence = 0.6 + 0.4 * authors;
        if (!year_ok) candidate.confidence -= 0.15;
        candidate.note = venue_ok ? "matched" : "venue mismatch";
        if (candidate.confidence > best.confidence) best = candidate;
    }
    return best;
}

size_t CitationAudit::count(Verdict v) const {
    return static_cast<size_t>(std::count_if(citations.begin(), citations.end(),
                                             [&](const auto& c) { return c.verdict == v; }));
}

CitationAudit audit_citations(const Review& review, CitationResolver& resolver,
                              const AuditOptions& options) {
    CitationAudit audit;
    for (const auto& raw : review.sections.references) {
        CitationRecord record;
        record.raw = raw;
        record.parsed = parse_apa(raw);
        if (!record.parsed.parsed_ok) {
            record.verdict = Verdict::fake;
            record.evidence = "citation string does not follow author-(year)-title shape";
            audit.citations.push_back(std::move(record));
            continue;
        }
        Resolution res = resolver.resolve(record.parsed);
        record.confidence = res.confidence;
        if (!res.match) {
            record.verdict = Verdict::fake;
            record.evidence = "no bibliographic match found";
        } else if (res.note == "venue mismatch" && res.confidence >= options.unsure_threshold) {
            // The work exists, but not at the venue the review cites.
            record.verdict = Verdict::fake;
            record.evidence = "venue mismatch: cited '" + record.parsed.venue +
                              "', published at '" + res.match->venue + "'";
        } else if (res.confidence >= options.unsure_threshold && res.note == "matched") {
            record.verdict = Verdict::valid;
            record.evidence = "matched: " + res.match->authors + " (" +
                              std::to_string(res.match->year) + ") " + res.match->title;
        } else {
            record.verdict = Verdict::unsure;
            record.evidence = "low-confidence match (" +
                              strings::format_decimal(res.confidence, 2) + "): " +
                              res.match->title;
        }
        audit.citations.push_back(std::move(record));
    }
    return audit;
}

} // namespace reviewkit::review

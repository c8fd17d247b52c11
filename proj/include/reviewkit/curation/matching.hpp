#pragma once

#include "reviewkit/curation/types.hpp"

namespace reviewkit::curation {

struct SourceRecord {
    std::string source_id;
    std::string title;
    std::vector<std::string> authors;
    std::filesystem::path tree;  // local checkout of the typeset source
};

// Abstracts where preprint sources come from; tests and offline runs use
// the local-directory implementation, network fetchers are adapters.
class SourceIndex {
public:
    virtual ~SourceIndex() = default;
    virtual std::vector<SourceRecord> lookup(const std::string& normalized_title) = 0;
};

class LocalSourceIndex final : public SourceIndex {
public:
    explicit LocalSourceIndex(std::vector<SourceRecord> records);

    // Directory layout: <root>/<source-id>/{meta.json, tree/...} where
    // meta.json = {"title": ..., "authors": [...]}.
    static LocalSourceIndex from_directory(const std::filesystem::path& root);

    std::vector<SourceRecord> lookup(const std::string& normalized_title) override;

private:
    std::multimap<std::string, SourceRecord> by_title_;
};

// Match rule: normalized-title equality AND author-list agreement
// (same family-name sets after normalization). NoMatch is the nullopt
// value, never an error.
std::optional<ArxivMatch> match_source(const ProceedingsEntry& entry, SourceIndex& index);

// Exposed normalization hooks for the property tests.
std::string normalize_title(const std::string& title);
bool authors_agree(const std::vector<std::string>& a, const std::vector<std::string>& b);

} // namespace reviewkit::curation

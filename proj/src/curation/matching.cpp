#include "reviewkit/curation/matching.hpp"

#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <set>

namespace reviewkit::curation {

using nlohmann::json;

std::string normalize_title(const std::string& title) { return strings::match_key(title); }

namespace {

// Family name: last token of the name after normalization.
std::string family_name(const std::string& author) {
    auto key = strings::match_key(author);
    auto parts = strings::split(key, ' ');
    return parts.empty() ? "" : parts.back();
}

std::set<std::string> family_set(const std::vector<std::string>& authors) {
    std::set<std::string> out;
    for (const auto& a : authors) {
        auto name = family_name(a);
        if (!name.empty()) out.insert(name);
    }
    return out;
}

} // namespace

bool authors_agree(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto fa = family_set(a);
    auto fb = family_set(b);
    return !fa.empty() && fa == fb;
}

LocalSourceIndex::LocalSourceIndex(std::vector<SourceRecord> records) {
    for (auto& r : records) {
        by_title_.emplace(normalize_title(r.title), std::move(r));
    }
}

LocalSourceIndex LocalSourceIndex::from_directory(const std::filesystem::path& root) {
    std::vector<SourceRecord> records;
    if (std::filesystem::exists(root)) {
        for (const auto& dir : std::filesystem::directory_iterator(root)) {
            if (!dir.is_directory()) continue;
            auto meta_path = dir.path() / "meta.json";
            if (!std::filesystem::exists(meta_path)) continue;
            json meta = json::parse(fs::read_text(meta_path));
            SourceRecord record;
            record.source_id = dir.path().filename().string();
            record.title = meta.value("title", "");
            for (const auto& a : meta.value("authors", json::array())) {
                record.authors.push_back(a.get<std::string>());
            }
            record.tree = dir.path() / "tree";
            records.push_back(std::move(record));
        }
    }
    return LocalSourceIndex(std::move(records));
}

std::vector<SourceRecord> LocalSourceIndex::lookup(const std::string& normalized_title) {
    std::vector<SourceRecord> out;
    auto [begin, end] = by_title_.equal_range(normalized_title);
    for (auto it = begin; it != end; ++it) out.push_back(it->second);
    return out;
}

std::optional<ArxivMatch> match_source(const ProceedingsEntry& entry, SourceIndex& index) {
    if (entry.title.empty() || entry.authors.empty()) {
        throw Error("invalid_argument", "entry needs a title and authors to match");
    }
    const std::string key = normalize_title(entry.title);
    for (const auto& candidate : index.lookup(key)) {
        if (!authors_agree(entry.authors, candidate.authors)) continue;
        ArxivMatch match;
        match.source_id = candidate.source_id;
        match.evidence = "title key '" + key + "' equal; author families agree (" +
                         std::to_string(entry.authors.size()) + " authors)";
        return match;
    }
    return std::nullopt;
}

} // namespace reviewkit::curation

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reviewkit::curation {

// The five benchmark criteria, also the five core pipeline stages.
inline constexpr std::array<const char*, 5> kCriteria = {
    "story", "presentation", "evaluations", "correctness", "significance",
};

bool is_criterion(const std::string& name);

struct ProceedingsEntry {
    std::string id;
    std::string title;
    std::vector<std::string> authors;
    std::string track;
};

struct ArxivMatch {
    std::string source_id;
    std::string evidence;
};

struct SourcePaper {
    std::string proceedings_id;
    std::string title;
    std::string track;
    std::filesystem::path source_tree;
    std::optional<ArxivMatch> match;
    bool compile_ok = false;
    std::string compile_log;

    // Dataset inclusion rule: matched source and a clean compile.
    bool eligible() const { return match.has_value() && compile_ok; }
};

struct PerturbationProposal {
    std::string criterion;
    std::string subtype;
    std::string description;
    std::string target_file;  // relative to the source tree root
    int line_start = 0;       // 1-based, inclusive
    int line_end = 0;
    std::string original_span;
    std::string modified_span;
};

struct Perturbation {
    std::string perturbation_id;
    std::string paper_id;
    std::string criterion;
    std::string subtype;
    std::string description;
    std::string target_file;
    int line_start = 0;
    int line_end = 0;
    std::string original_span;
    std::string modified_span;
    std::filesystem::path modified_tree;
    std::filesystem::path output_pdf;
};

struct OversightVerdict {
    std::string perturbation_id;
    std::string reviewer_id;
    bool valid = false;
    std::string note;
};

// Extensible subtype taxonomy, seeded with the named examples per
// criterion; operators may register more.
class SubtypeRegistry {
public:
    static SubtypeRegistry with_defaults();

    void register_subtype(const std::string& criterion, const std::string& subtype);
    bool contains(const std::string& criterion, const std::string& subtype) const;
    std::vector<std::string> subtypes(const std::string& criterion) const;

private:
    std::map<std::string, std::vector<std::string>> by_criterion_;
};

} // namespace reviewkit::curation

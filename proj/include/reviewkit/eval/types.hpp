#pragma once

#include "reviewkit/review/review.hpp"
#include "reviewkit/util/error.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace reviewkit::eval {

// Review variants under evaluation: a one-shot baseline, one of the five
// criterion-targeted stages, or the full pipeline's final review.
struct ReviewVariant {
    enum class Kind { baseline, targeted, final_review };

    Kind kind = Kind::baseline;
    std::string stage;  // set for targeted variants

    static ReviewVariant baseline() { return {Kind::baseline, ""}; }
    static ReviewVariant targeted(std::string stage_name);
    static ReviewVariant final_review() { return {Kind::final_review, ""}; }

    // "baseline", "targeted:story", "final"
    std::string label() const;
    static ReviewVariant from_label(const std::string& label);
};

struct Judgment {
    std::string perturbation_id;
    std::string variant;  // variant label
    bool caught = false;
    std::string supporting_excerpt;  // verbatim substring of the review when caught
    std::string justification;
    std::string downgrade_reason;  // "excerpt_unverified" when the harness flipped it
};

std::string judgment_to_json_line(const Judgment& j);
Judgment judgment_from_json_line(const std::string& line);

std::vector<Judgment> load_judgments_jsonl(const std::filesystem::path& path);
void append_judgment_jsonl(const std::filesystem::path& path, const Judgment& j);

} // namespace reviewkit::eval

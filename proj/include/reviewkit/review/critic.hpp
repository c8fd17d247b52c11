#pragma once

#include "reviewkit/gateway/gateway.hpp"
#include "reviewkit/review/review.hpp"

#include <map>
#include <set>

namespace reviewkit::review {

enum class ReviewIssue { identity_reveal, offensive_content, bias_concern, missing_structure };
enum class EditorialConcern { ethical_concern, author_identity_in_paper, policy_violation };
enum class TriState { yes, no, unsure };

const char* to_string(ReviewIssue issue);
const char* to_string(EditorialConcern concern);
const char* to_string(TriState t);

struct CriticFindings {
    std::set<ReviewIssue> review_issues;
    std::set<EditorialConcern> editorial_concerns;
    TriState appears_llm_written = TriState::unsure;
    int apparent_effort = 0;   // ordinal; the scale is configuration
    int overall_quality = 0;
    std::map<std::string, std::string> rationales;  // finding name -> rationale
};

// Raised when critic output cannot be mapped onto the closed taxonomy;
// the raw model output is preserved for the oversight trail.
class ParseFailure : public Error {
public:
    ParseFailure(const std::string& message, std::string raw)
        : Error("parse_failure", message), raw_(std::move(raw)) {}
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

// Builds the critic request. Exposed so tests (and the isolation
// property) can inspect exactly what the critic sees: the review text
// only -- no paper content, no generation prompts, no authorship hint.
gateway::ModelRequest build_critic_request(const Review& review);

// Expected critic output (JSON):
//   {"review_issues": [{"issue": "...", "rationale": "..."}],
//    "editorial_concerns": [{"concern": "...", "rationale": "..."}],
//    "auxiliary": {"appears_llm_written": "yes|no|unsure",
//                  "apparent_effort": N, "overall_quality": N}}
CriticFindings parse_critic_output(const std::string& text);

CriticFindings run_quality_critic(const Review& review, const gateway::Gateway& gateway,
                                  const std::string& critic_backend_id);

} // namespace reviewkit::review

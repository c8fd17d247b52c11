#include "reviewkit/review/critic.hpp"

#include <json.hpp>

namespace reviewkit::review {

using nlohmann::json;

const char* to_string(ReviewIssue issue) {
    switch (issue) {
    case ReviewIssue::identity_reveal: return "identity_reveal";
    case ReviewIssue::offensive_content: return "offensive_content";
    case ReviewIssue::bias_concern: return "bias_concern";
    case ReviewIssue::missing_structure: return "missing_structure";
    }
    return "?";
}

const char* to_string(EditorialConcern concern) {
    switch (concern) {
    case EditorialConcern::ethical_concern: return "ethical_concern";
    case EditorialConcern::author_identity_in_paper: return "author_identity_in_paper";
    case EditorialConcern::policy_violation: return "policy_violation";
    }
    return "?";
}

const char* to_string(TriState t) {
    switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    case TriState::unsure: return "unsure";
    }
    return "?";
}

namespace {

std::optional<ReviewIssue> parse_review_issue(const std::string& s) {
    if (s == "identity_reveal") return ReviewIssue::identity_reveal;
    if (s == "offensive_content") return ReviewIssue::offensive_content;
    if (s == "bias_concern") return ReviewIssue::bias_concern;
    if (s == "missing_structure") return ReviewIssue::missing_structure;
    return std::nullopt;
}

std::optional<EditorialConcern> parse_editorial_concern(const std::string& s) {
    if (s == "ethical_concern") return EditorialConcern::ethical_concern;
    if (s == "author_identity_in_paper") return EditorialConcern::author_identity_in_paper;
    if (s == "policy_violation") return EditorialConcern::policy_violation;
    return std::nullopt;
}

constexpr const char* kCriticInstruction =
    "You are screening a single peer review for release. Report problems in "
    "the review itself and any editorial concerns it surfaces, as JSON with "
    "keys review_issues, editorial_concerns and auxiliary. Allowed review "
    "issues: identity_reveal, offensive_content, bias_concern, "
    "missing_structure. Allowed editorial concerns: ethical_concern, "
    "author_identity_in_paper, policy_violation. Every flagged item needs a "
    "rationale. auxiliary must carry appears_llm_written (yes/no/unsure), "
    "apparent_effort and overall_quality as integers.";

} // namespace

gateway::ModelRequest build_critic_request(const Review& review) {
    gateway::ModelRequest request;
    request.tag = "quality_critic";
    request.segments.push_back({gateway::SegmentRole::system, kCriticInstruction});
    request.segments.push_back({gateway::SegmentRole::user, review.body});
    // No attachments and no tools: the critic sees only the review text.
    return request;
}

CriticFindings parse_critic_output(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ParseFailure("critic output is not a JSON object", text);
    }

    CriticFindings findings;
    if (doc.contains("review_issues")) {
        for (const auto& item : doc["review_issues"]) {
            const std::string name = item.value("issue", "");
            auto issue = parse_review_issue(name);
            if (!issue) {
                throw ParseFailure("review issue '" + name + "' is outside the taxonomy",
                                   text);
            }
            const std::string rationale = item.value("rationale", "");
            if (rationale.empty()) {
                throw ParseFailure("flagged issue '" + name + "' carries no rationale", text);
            }
            findings.review_issues.insert(*issue);
            findings.rationales[name] = rationale;
        }
    }
    if (doc.contains("editorial_concerns")) {
        for (const auto& item : doc["editorial_concerns"]) {
            const std::string name = item.value("concern", "");
            auto concern = parse_editorial_concern(name);
            if (!concern) {
                throw ParseFailure("editorial concern '" + name + "' is outside the taxonomy",
                                   text);
            }
            const std::string rationale = item.value("rationale", "");
            if (rationale.empty()) {
                throw ParseFailure("flagged concern '" + name + "' carries no rationale",
                                   text);
            }
            findings.editorial_concerns.insert(*concern);
            findings.rationales[name] = rationale;
        }
    }
    if (doc.contains("auxiliary")) {
        const auto& aux = doc["auxiliary"];
        const std::string llm = aux.value("appears_llm_written", "unsure");
        findings.appears_llm_written = llm == "yes"   ? TriState::yes
                                       : llm == "no"  ? TriState::no
                                                      : TriState::unsure;
        findings.apparent_effort = aux.value("apparent_effort", 0);
        findings.overall_quality = aux.value("overall_quality", 0);
    }
    return findings;
}

CriticFindings run_quality_critic(const Review& review, const gateway::Gateway& gateway,
                                  const std::string& critic_backend_id) {
    if (review.body.empty()) {
        throw Error("invalid_argument", "cannot critique an empty review");
    }
    auto response = gateway.invoke(build_critic_request(review), critic_backend_id);
    return parse_critic_output(response.text);
}

} // namespace reviewkit::review

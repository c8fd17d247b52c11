#include "reviewkit/eval/judge.hpp"

#include "reviewkit/util/strings.hpp"

#include <json.hpp>

namespace reviewkit::eval {

using nlohmann::json;

gateway::ModelRequest build_judge_request(const review::Review& review,
                                          const curation::Perturbation& perturbation) {
    gateway::ModelRequest request;
    request.tag = "judge";
    request.segments.push_back(
        {gateway::SegmentRole::system,
         "A specific error was injected into a paper. Decide whether the review "
         "below explicitly identifies that specific error. Output JSON "
         "{\"caught\": bool, \"excerpt\": string, \"justification\": string}. "
         "When caught, excerpt must quote the review passage that identifies "
         "the error, verbatim. Always give a justification: which excerpt "
         "supports the judgment, or why the review missed the error."});

    std::string payload;
    payload += "injected error (" + perturbation.criterion + "/" + perturbation.subtype +
               "): " + perturbation.description + "\n\n";
    payload += "original source span:\n" + perturbation.original_span + "\n\n";
    payload += "modified source span:\n" + perturbation.modified_span + "\n\n";
    payload += "review under judgment:\n" + review.body + "\n";
    request.segments.push_back({gateway::SegmentRole::user, payload});
    return request;
}

Judgment verify_judgment(Judgment judgment, const review::Review& review) {
    if (!judgment.caught) return judgment;
    if (judgment.supporting_excerpt.empty() ||
        !strings::contains_collapsed(review.body, judgment.supporting_excerpt)) {
        judgment.caught = false;
        judgment.downgrade_reason = "excerpt_unverified";
    }
    return judgment;
}

Judgment judge_review(const review::Review& review, const curation::Perturbation& perturbation,
                      const ReviewVariant& variant, const gateway::Gateway& gateway,
                      const std::string& judge_backend_id) {
    if (review.paper_id != perturbation.paper_id) {
        throw Error("invalid_argument", "review '" + review.paper_id +
                                            "' does not belong to perturbation '" +
                                            perturbation.perturbation_id + "'");
    }
    auto response = gateway.invoke(build_judge_request(review, perturbation),
                                   judge_backend_id);

    json doc = json::parse(response.text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("caught") ||
        !doc["caught"].is_boolean()) {
        throw Error("malformed_judge_output",
                    "judge output is not a caught/excerpt/justification object");
    }
    Judgment judgment;
    judgment.perturbation_id = perturbation.perturbation_id;
    judgment.variant = variant.label();
    judgment.caught = doc["caught"].get<bool>();
    judgment.supporting_excerpt = doc.value("excerpt", "");
    judgment.justification = doc.value("justification", "");
    return verify_judgment(std::move(judgment), review);
}

} // namespace reviewkit::eval

#pragma once

#include "reviewkit/curation/types.hpp"
#include "reviewkit/eval/types.hpp"
#include "reviewkit/gateway/gateway.hpp"

namespace reviewkit::eval {

// The judge sees the review under test plus the perturbation's
// description and both spans -- never any other review. Exposed for the
// no-cross-contamination property test.
gateway::ModelRequest build_judge_request(const review::Review& review,
                                          const curation::Perturbation& perturbation);

// Expected judge output (JSON):
//   {"caught": bool, "excerpt": "...", "justification": "..."}
// Error("malformed_judge_output") when unparseable.
//
// A caught verdict survives only if the excerpt is a verbatim
// (whitespace-collapsed) substring of the review body; otherwise the
// judgment is downgraded to caught=false with reason excerpt_unverified.
Judgment judge_review(const review::Review& review, const curation::Perturbation& perturbation,
                      const ReviewVariant& variant, const gateway::Gateway& gateway,
                      const std::string& judge_backend_id);

// Verification step alone, for adversarial-judge property tests.
Judgment verify_judgment(Judgment judgment, const review::Review& review);

} // namespace reviewkit::eval

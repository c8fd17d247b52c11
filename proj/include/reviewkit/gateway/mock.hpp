#pragma once

#include "reviewkit/gateway/backend.hpp"

namespace reviewkit::gateway {

// Unlimited deterministic offline backend: synthesizes a response from
// the request tag and content alone. Drives `--mock` CLI runs of any
// size; scripted FixtureBackend stays the tool for tests that need
// precise per-call control.
//
// Tag behavior:
//   initial_review / final_review / baseline_review -> a structured
//     review with all six required elements
//   judge -> {"caught": ..., "excerpt": <line quoted from the judged
//     review>, "justification": ...}, caught decided by a stable hash
//   quality_critic -> clean findings JSON
//   perturbation_generator -> one proposal editing a safe line of the
//     first attached source file
//   anything else -> deterministic stage-findings text
class MockBackend final : public ModelBackend {
public:
    BackendOutput complete(const ModelRequest& request) override;
};

} // namespace reviewkit::gateway

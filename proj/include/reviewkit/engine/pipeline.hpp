#pragma once

#include "reviewkit/engine/context.hpp"
#include "reviewkit/gateway/gateway.hpp"
#include "reviewkit/util/clock.hpp"

#include <atomic>
#include <memory>

namespace reviewkit::engine {

struct PipelineResult {
    std::vector<StageRecord> records;  // one per plan stage, in order
    std::string review_body;           // the last stage's response text
    size_t invoked_stages = 0;         // stages actually run this call
};

// Runs the plan for one paper with a checkpoint after every stage. An
// existing checkpoint for the same plan digest is picked up and only the
// incomplete suffix runs; a checkpoint from a different plan is an error.
//
// `cancel`, when set, is polled between stages: a raised flag stops the
// run with Error("interrupted"), the checkpoint keeping every completed
// stage.
//
// Errors: "invalid_plan", "plan_digest_mismatch", "interrupted",
// "stage_failed" (wraps the failing stage's cause; the checkpoint holds
// every stage completed before the failure).
PipelineResult run_pipeline(const ingest::PaperBundle& bundle, const StagePlan& plan,
                            const gateway::Gateway& gateway, const PromptRegistry& registry,
                            CheckpointStore& store, Clock& clock,
                            const std::atomic<bool>* cancel = nullptr);

// Explicit resume: validates the checkpoint's plan digest, replays
// nothing, continues at the first incomplete stage.
PipelineResult resume_from_checkpoint(const Checkpoint& checkpoint,
                                      const ingest::PaperBundle& bundle, const StagePlan& plan,
                                      const gateway::Gateway& gateway,
                                      const PromptRegistry& registry, CheckpointStore& store,
                                      Clock& clock);

} // namespace reviewkit::engine

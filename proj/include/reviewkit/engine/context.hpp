#pragma once

#include "reviewkit/engine/plan.hpp"
#include "reviewkit/engine/records.hpp"
#include "reviewkit/ingest/types.hpp"

#include <span>

namespace reviewkit::engine {

// Assembles the cumulative-context request for one stage:
//   [ base instruction (system),
//     stage-1 prompt (user), stage-1 result (assistant),
//     ...,
//     current stage prompt (user) ]
// with both paper representations attached and the stage's tools set.
//
// `prior` must be the executed plan prefix (records in plan order).
// When `context_window_tokens` > 0 and the estimate exceeds it, prior
// tool-trace blocks are dropped first, then the oldest prior results are
// elided (marker text), never the base instruction or the current prompt.
gateway::ModelRequest build_stage_context(const ingest::PaperBundle& bundle,
                                          const StagePlan& plan, size_t stage_index,
                                          std::span<const StageRecord> prior,
                                          const PromptRegistry& registry,
                                          int64_t context_window_tokens = 0);

inline constexpr const char* kElisionMarker =
    "[elided: earlier stage result truncated to fit the context window]";

// Compact rendering of tool traces appended to a prior stage's result.
std::string render_tool_traces(const std::vector<gateway::ToolTrace>& traces);

std::string request_digest(const gateway::ModelRequest& request);

} // namespace reviewkit::engine

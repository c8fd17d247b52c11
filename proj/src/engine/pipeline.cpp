#include "reviewkit/engine/pipeline.hpp"

namespace reviewkit::engine {

namespace {

PipelineResult continue_pipeline(Checkpoint checkpoint, const ingest::PaperBundle& bundle,
                                 const StagePlan& plan, const gateway::Gateway& gateway,
                                 const PromptRegistry& registry, CheckpointStore& store,
                                 Clock& clock, const std::string& plan_digest,
                                 const std::atomic<bool>* cancel) {
    PipelineResult result;
    result.records = std::move(checkpoint.records);

    for (size_t i = result.records.size(); i < plan.stages.size(); ++i) {
        if (cancel && cancel->load()) {
            throw Error("interrupted", "run interrupted; " +
                                           std::to_string(result.records.size()) +
                                           " stages checkpointed");
        }
        const StageSpec& spec = plan.stages[i];
        auto backend = gateway.resolve(spec.backend_id);
        auto request = build_stage_context(bundle, plan, i, result.records, registry,
                                           backend->context_window_tokens());

        StageRecord record;
        record.stage = spec.name;
        record.request_digest = request_digest(request);
        record.started_at = format_utc(clock.now());
        gateway::ModelResponse response;
        try {
            response = gateway.invoke(request, *backend);
        } catch (const Error& e) {
            throw Error("stage_failed",
                        "stage '" + spec.name + "' failed: " + e.what() + " [" + e.code() +
                            "]; " + std::to_string(result.records.size()) +
                            " stages checkpointed");
        }
        record.finished_at = format_utc(clock.now());
        record.response_text = std::move(response.text);
        record.tool_traces = std::move(response.tool_traces);
        record.token_usage = response.token_usage;
        record.attempts = response.attempts;

        store.append(bundle.paper_id, plan_digest, record);
        result.records.push_back(std::move(record));
        ++result.invoked_stages;
    }

    result.review_body = result.records.back().response_text;
    return result;
}

} // namespace

PipelineResult run_pipeline(const ingest::PaperBundle& bundle, const StagePlan& plan,
                            const gateway::Gateway& gateway, const PromptRegistry& registry,
                            CheckpointStore& store, Clock& clock,
                            const std::atomic<bool>* cancel) {
    plan.validate(registry);
    const std::string plan_digest = plan.digest(registry);

    Checkpoint checkpoint = store.load(bundle.paper_id);
    if (!checkpoint.plan_digest.empty() && checkpoint.plan_digest != plan_digest) {
        throw Error("plan_digest_mismatch",
                    "existing checkpoint for '" + bundle.paper_id +
                        "' was produced by a different plan");
    }
    return continue_pipeline(std::move(checkpoint), bundle, plan, gateway, registry, store,
                             clock, plan_digest, cancel);
}

PipelineResult resume_from_checkpoint(const Checkpoint& checkpoint,
                                      const ingest::PaperBundle& bundle, const StagePlan& plan,
                                      const gateway::Gateway& gateway,
                                      const PromptRegistry& registry, CheckpointStore& store,
                                      Clock& clock) {
    plan.validate(registry);
    const std::string plan_digest = plan.digest(registry);
    if (checkpoint.plan_digest != plan_digest) {
        throw Error("plan_digest_mismatch", "checkpoint plan digest does not match the plan");
    }
    return continue_pipeline(checkpoint, bundle, plan, gateway, registry, store, clock,
                             plan_digest, nullptr);
}

} // namespace reviewkit::engine

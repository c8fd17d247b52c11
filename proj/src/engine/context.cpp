#include "reviewkit/engine/context.hpp"

#include "reviewkit/util/digest.hpp"

#include <sstream>

namespace reviewkit::engine {

std::string render_tool_traces(const std::vector<gateway::ToolTrace>& traces) {
    if (traces.empty()) return "";
    std::ostringstream out;
    out << "\n\n[tool activity]";
    for (const auto& t : traces) {
        out << "\n- " << t.kind << ": " << t.input << " => " << t.output;
    }
    return out.str();
}

std::string request_digest(const gateway::ModelRequest& request) {
    std::ostringstream canon;
    canon << "tag=" << request.tag;
    for (const auto& seg : request.segments) {
        canon << "\x1e" << gateway::to_string(seg.role) << "\x1f" << seg.text;
    }
    for (const auto& att : request.attachments) {
        canon << "\x1e" << "att:" << gateway::to_string(att.kind) << ':' << att.document_id;
    }
    canon << "\x1e" << "tools:" << request.tools.code_execution << request.tools.web_search;
    return digest::sha256_hex(canon.str());
}

gateway::ModelRequest build_stage_context(const ingest::PaperBundle& bundle,
                                          const StagePlan& plan, size_t stage_index,
                                          std::span<const StageRecord> prior,
                                          const PromptRegistry& registry,
                                          int64_t context_window_tokens) {
    if (stage_index >= plan.stages.size()) {
        throw Error("invalid_plan", "stage index beyond plan length");
    }
    if (prior.size() != stage_index) {
        throw Error("invalid_plan", "prior records are not the executed plan prefix");
    }
    for (size_t i = 0; i < prior.size(); ++i) {
        if (prior[i].stage != plan.stages[i].name) {
            throw Error("invalid_plan", "prior record order does not match the plan");
        }
    }

    const StageSpec& spec = plan.stages[stage_index];

    gateway::ModelRequest request;
    request.tag = spec.name;
    request.tools = spec.tools;
    request.segments.push_back(
        {gateway::SegmentRole::system, registry.get(plan.base_instruction_id).text});

    struct PriorSlot {
        size_t prompt_segment;
        size_t result_segment;
        bool has_traces;
        const StageRecord* record;
    };
    std::vector<PriorSlot> slots;
    for (size_t i = 0; i < prior.size(); ++i) {
        const auto& record = prior[i];
        request.segments.push_back(
            {gateway::SegmentRole::user, registry.get(plan.stages[i].prompt_id).text});
        size_t prompt_idx = request.segments.size() - 1;
        request.segments.push_back(
            {gateway::SegmentRole::assistant,
             record.response_text + render_tool_traces(record.tool_traces)});
        slots.push_back({prompt_idx, request.segments.size() - 1,
                         !record.tool_traces.empty(), &record});
    }
    request.segments.push_back({gateway::SegmentRole::user, registry.get(spec.prompt_id).text});

    request.attachments.push_back({gateway::AttachmentKind::pdf, bundle.paper_id});
    request.attachments.push_back({gateway::AttachmentKind::markdown, bundle.paper_id});

    if (context_window_tokens > 0) {
        // Pass 1: drop tool-trace blocks, oldest first.
        for (auto& slot : slots) {
            if (gateway::estimate_request_tokens(request) <= context_window_tokens) break;
            if (slot.has_traces) {
                request.segments[slot.result_segment].text = slot.record->response_text;
                slot.has_traces = false;
            }
        }
        // Pass 2: elide the oldest prior results.
        for (auto& slot : slots) {
            if (gateway::estimate_request_tokens(request) <= context_window_tokens) break;
            request.segments[slot.result_segment].text = kElisionMarker;
        }
    }
    return request;
}

} // namespace reviewkit::engine

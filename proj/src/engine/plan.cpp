#include "reviewkit/engine/plan.hpp"

#include "reviewkit/util/digest.hpp"

#include <sstream>

namespace reviewkit::engine {

void PromptRegistry::register_prompt(const std::string& id, const std::string& text) {
    prompts_[id] = Prompt{id, text, digest::sha256_hex(text)};
}

const Prompt& PromptRegistry::get(const std::string& id) const {
    auto it = prompts_.find(id);
    if (it == prompts_.end()) {
        throw Error("missing_prompt", "prompt id '" + id + "' is not registered");
    }
    return it->second;
}

bool PromptRegistry::contains(const std::string& id) const { return prompts_.count(id) > 0; }

PromptRegistry PromptRegistry::with_defaults() {
    PromptRegistry registry;
    registry.register_prompt(
        "base",
        "You are reviewing a scientific manuscript. Use the attached PDF and the "
        "OCR-derived markdown together: prefer the markdown for equations and "
        "tables, the PDF for layout and figures. Be factual and objective. Do "
        "not assign scores and do not make an accept or reject recommendation.");
    registry.register_prompt(
        "story",
        "Stage focus: the problem statement, the claimed gap in prior work, the "
        "stated contributions, and whether the presented evidence supports the "
        "overall narrative. Report concrete issues with locations.");
    registry.register_prompt(
        "presentation",
        "Stage focus: clarity, organization, readability, notation, figures and "
        "tables. Report concrete issues a careful reader would stumble over.");
    registry.register_prompt(
        "evaluations",
        "Stage focus: experimental design, datasets, baselines, metrics, "
        "statistical support for the claims, and reproducibility. Run the code "
        "tool to check computations where that helps.");
    registry.register_prompt(
        "correctness",
        "Stage focus: equations, proofs, algorithms, figures and tables. Verify "
        "derivations step by step; run the code tool on math or code snippets "
        "where that helps.");
    registry.register_prompt(
        "significance",
        "Stage focus: novelty and positioning against prior published work. Use "
        "the web search tool to find closely related publications.");
    registry.register_prompt(
        "initial_review",
        "Compile the findings from every previous stage into a draft review "
        "with exactly this structure: a title line, a synopsis of the paper, a "
        "summary of the review, a bulleted list of strengths, a bulleted list "
        "of weaknesses, and a references list in APA format. Write markdown; "
        "keep math in math notation and tables as tables.");
    registry.register_prompt(
        "self_critique",
        "Reread the draft review against the paper. Flag unsupported claims, "
        "factual errors, inconsistencies with the paper, missing details, and "
        "unclear or incomplete citations.");
    registry.register_prompt(
        "final_review",
        "Revise the draft review so every self-critique point is addressed, and "
        "output the final review in the same required structure.");
    registry.register_prompt(
        "baseline_review",
        "Write a complete review of the attached paper in one pass: a title "
        "line, a synopsis, a summary, strengths, weaknesses, and APA "
        "references. Be factual and objective; no scores or recommendations.");
    return registry;
}

namespace {

gateway::ToolSet tools_for_stage(const std::string& name) {
    gateway::ToolSet tools;
    if (name == "evaluations" || name == "correctness") {
        tools.code_execution = true;
    }
    if (name == "significance") {
        tools.web_search = true;
        tools.web_search_scope_note =
            "Restrict results to work published at peer-reviewed venues; "
            "disregard preprints and other non-peer-reviewed material.";
    }
    return tools;
}

} // namespace

StagePlan StagePlan::default_plan(const std::string& backend_id) {
    StagePlan plan;
    for (const char* name : kDefaultStageOrder) {
        plan.stages.push_back({name, name, tools_for_stage(name), backend_id});
    }
    return plan;
}

StagePlan StagePlan::baseline_plan(const std::string& backend_id) {
    StagePlan plan;
    plan.stages.push_back({"baseline_review", "baseline_review", {}, backend_id});
    return plan;
}

StagePlan StagePlan::targeted_plan(const std::string& stage_name,
                                   const std::string& backend_id) {
    StagePlan plan;
    plan.stages.push_back({stage_name, stage_name, tools_for_stage(stage_name), backend_id});
    return plan;
}

void StagePlan::validate(const PromptRegistry& registry) const {
    if (stages.empty()) {
        throw Error("invalid_plan", "plan has no stages");
    }
    (void)registry.get(base_instruction_id);
    for (const auto& stage : stages) {
        (void)registry.get(stage.prompt_id);
        if (stage.name.empty()) throw Error("invalid_plan", "stage without a name");
    }
}

std::string StagePlan::digest(const PromptRegistry& registry) const {
    std::ostringstream canon;
    canon << "base=" << base_instruction_id << ':' << registry.get(base_instruction_id).digest;
    for (const auto& stage : stages) {
        canon << ";stage=" << stage.name << '|' << stage.prompt_id << '|'
              << registry.get(stage.prompt_id).digest << '|' << stage.backend_id << '|'
              << (stage.tools.code_execution ? 'c' : '-')
              << (stage.tools.web_search ? 'w' : '-');
    }
    return digest::sha256_hex(canon.str());
}

} // namespace reviewkit::engine

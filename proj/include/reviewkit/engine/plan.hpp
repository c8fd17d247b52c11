#pragma once

#include "reviewkit/gateway/types.hpp"
#include "reviewkit/util/error.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace reviewkit::engine {

// Canonical stage order: five criterion stages, then synthesis.
inline constexpr std::array<const char*, 8> kDefaultStageOrder = {
    "story",          "presentation",  "evaluations", "correctness",
    "significance",   "initial_review", "self_critique", "final_review",
};

inline constexpr std::array<const char*, 5> kCoreStages = {
    "story", "presentation", "evaluations", "correctness", "significance",
};

struct Prompt {
    std::string id;
    std::string text;
    std::string digest;  // sha256 of the text
};

// Prompt templates are operator-supplied configuration addressed by id;
// the registry ships neutral defaults so offline runs work out of the box.
class PromptRegistry {
public:
    void register_prompt(const std::string& id, const std::string& text);

    // Error("missing_prompt") for unknown ids.
    const Prompt& get(const std::string& id) const;
    bool contains(const std::string& id) const;

    static PromptRegistry with_defaults();

private:
    std::map<std::string, Prompt> prompts_;
};

struct StageSpec {
    std::string name;
    std::string prompt_id;
    gateway::ToolSet tools;
    std::string backend_id;
};

struct StagePlan {
    std::vector<StageSpec> stages;
    std::string base_instruction_id = "base";

    // Default 8-stage plan. Tools: code execution on evaluations and
    // correctness, web search on significance.
    static StagePlan default_plan(const std::string& backend_id);

    // Single-prompt plan used as the benchmark baseline variant.
    static StagePlan baseline_plan(const std::string& backend_id);

    // Plan that runs exactly one core stage.
    static StagePlan targeted_plan(const std::string& stage_name,
                                   const std::string& backend_id);

    // Error("invalid_plan") when empty; Error("missing_prompt") when a
    // prompt id does not resolve.
    void validate(const PromptRegistry& registry) const;

    // Stable digest over stage names, prompt digests, tools and backends.
    std::string digest(const PromptRegistry& registry) const;
};

} // namespace reviewkit::engine

#pragma once

#include "reviewkit/gateway/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace reviewkit::engine {

// Audit record of one completed stage.
struct StageRecord {
    std::string stage;
    std::string request_digest;  // sha256 over the serialized request
    std::string response_text;
    std::vector<gateway::ToolTrace> tool_traces;
    gateway::TokenUsage token_usage;
    std::string started_at;   // UTC ISO-8601
    std::string finished_at;
    int attempts = 1;
};

std::string to_json_line(const StageRecord& record);
StageRecord stage_record_from_json(const std::string& line);

struct Checkpoint {
    std::string paper_id;
    std::string plan_digest;
    std::vector<std::string> completed;  // stage names, plan order
    std::vector<StageRecord> records;
};

// One directory per paper under the run root:
//   <root>/<paper-id>/records.jsonl   (append-only, one record per line)
//   <root>/<paper-id>/checkpoint.json (rewritten after every stage)
class CheckpointStore {
public:
    explicit CheckpointStore(std::filesystem::path root);

    // Empty checkpoint (no file) when the paper has never run.
    Checkpoint load(const std::string& paper_id) const;

    void append(const std::string& paper_id, const std::string& plan_digest,
                const StageRecord& record);

    bool exists(const std::string& paper_id) const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path paper_dir(const std::string& paper_id) const;
    std::filesystem::path root_;
};

} // namespace reviewkit::engine

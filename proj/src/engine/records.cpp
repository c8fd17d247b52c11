#include "reviewkit/engine/records.hpp"

#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

namespace reviewkit::engine {

using nlohmann::json;

std::string to_json_line(const StageRecord& record) {
    json doc;
    doc["stage"] = record.stage;
    doc["request_digest"] = record.request_digest;
    doc["response_text"] = record.response_text;
    doc["tool_traces"] = json::array();
    for (const auto& t : record.tool_traces) {
        doc["tool_traces"].push_back({{"kind", t.kind},
                                      {"input", t.input},
                                      {"output", t.output},
                                      {"duration_ms", t.duration.count()}});
    }
    doc["token_usage"] = {{"input", record.token_usage.input},
                          {"output", record.token_usage.output},
                          {"reasoning", record.token_usage.reasoning}};
    doc["started_at"] = record.started_at;
    doc["finished_at"] = record.finished_at;
    doc["attempts"] = record.attempts;
    return doc.dump();
}

StageRecord stage_record_from_json(const std::string& line) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) {
        throw Error("corrupt_record", "unparseable stage record line");
    }
    StageRecord record;
    record.stage = doc.value("stage", "");
    record.request_digest = doc.value("request_digest", "");
    record.response_text = doc.value("response_text", "");
    if (doc.contains("tool_traces")) {
        for (const auto& t : doc["tool_traces"]) {
            gateway::ToolTrace trace;
            trace.kind = t.value("kind", "");
            trace.input = t.value("input", "");
            trace.output = t.value("output", "");
            trace.duration = std::chrono::milliseconds(t.value("duration_ms", int64_t{0}));
            record.tool_traces.push_back(std::move(trace));
        }
    }
    if (doc.contains("token_usage")) {
        record.token_usage.input = doc["token_usage"].value("input", int64_t{0});
        record.token_usage.output = doc["token_usage"].value("output", int64_t{0});
        record.token_usage.reasoning = doc["token_usage"].value("reasoning", int64_t{0});
    }
    record.started_at = doc.value("started_at", "");
    record.finished_at = doc.value("finished_at", "");
    record.attempts = doc.value("attempts", 1);
    return record;
}

CheckpointStore::CheckpointStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path CheckpointStore::paper_dir(const std::string& paper_id) const {
    return root_ / paper_id;
}

bool CheckpointStore::exists(const std::string& paper_id) const {
    return std::filesystem::exists(paper_dir(paper_id) / "checkpoint.json");
}

Checkpoint CheckpointStore::load(const std::string& paper_id) const {
    Checkpoint cp;
    cp.paper_id = paper_id;
    const auto dir = paper_dir(paper_id);

    // The append-only record log is the source of truth. A torn final
    // line (crash mid-write) is dropped; everything before it is kept.
    if (std::filesystem::exists(dir / "records.jsonl")) {
        auto lines = strings::split(fs::read_text(dir / "records.jsonl"), '\n');
        for (size_t i = 0; i < lines.size(); ++i) {
            if (strings::trim(lines[i]).empty()) continue;
            try {
                cp.records.push_back(stage_record_from_json(lines[i]));
            } catch (const Error&) {
                if (i + 1 == lines.size() || (i + 2 == lines.size() && lines.back().empty())) {
                    break;
                }
                throw;
            }
        }
    }
    for (const auto& r : cp.records) cp.completed.push_back(r.stage);

    if (std::filesystem::exists(dir / "checkpoint.json")) {
        json doc = json::parse(fs::read_text(dir / "checkpoint.json"), nullptr, false);
        if (!doc.is_discarded()) {
            cp.plan_digest = doc.value("plan_digest", "");
        }
    }
    return cp;
}

void CheckpointStore::append(const std::string& paper_id, const std::string& plan_digest,
                             const StageRecord& record) {
    const auto dir = paper_dir(paper_id);
    std::filesystem::create_directories(dir);
    fs::append_line(dir / "records.jsonl", to_json_line(record));

    Checkpoint cp = load(paper_id);
    json doc;
    doc["paper_id"] = paper_id;
    doc["plan_digest"] = plan_digest;
    json completed = json::array();
    for (const auto& r : cp.records) completed.push_back(r.stage);
    doc["completed"] = std::move(completed);
    fs::write_text(dir / "checkpoint.json", doc.dump(2) + "\n");
}

} // namespace reviewkit::engine

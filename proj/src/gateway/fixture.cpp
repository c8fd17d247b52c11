#include "reviewkit/gateway/fixture.hpp"

#include "reviewkit/util/fs.hpp"

#include <json.hpp>

namespace reviewkit::gateway {

using nlohmann::json;

FixtureBackend::FixtureBackend(Script script, int64_t context_window)
    : script_(std::move(script)), context_window_(context_window) {
    if (script_.empty()) {
        throw Error("invalid_script", "fixture backend needs a non-empty script");
    }
}

std::shared_ptr<FixtureBackend> FixtureBackend::from_json(const std::string& text) {
    json doc = json::parse(text);
    Script script;
    int64_t window = doc.value("context_window_tokens", int64_t{400000});
    if (!doc.contains("responses") || !doc["responses"].is_object()) {
        throw Error("invalid_script", "fixture manifest missing 'responses' object");
    }
    for (const auto& [key, entries] : doc["responses"].items()) {
        std::vector<ScriptEntry> list;
        for (const auto& item : entries) {
            ScriptEntry entry;
            if (item.contains("fail")) {
                const std::string kind = item["fail"].get<std::string>();
                entry.kind = kind == "transient" ? ScriptEntry::Kind::fail_transient
                                                 : ScriptEntry::Kind::fail_fatal;
                entry.text = item.value("message", "scripted failure");
            } else {
                entry.kind = ScriptEntry::Kind::respond;
                entry.text = item.value("text", "");
                if (item.contains("tool_traces")) {
                    for (const auto& t : item["tool_traces"]) {
                        ToolTrace trace;
                        trace.kind = t.value("kind", "");
                        trace.input = t.value("input", "");
                        trace.output = t.value("output", "");
                        trace.duration =
                            std::chrono::milliseconds(t.value("duration_ms", int64_t{0}));
                        entry.tool_traces.push_back(std::move(trace));
                    }
                }
                if (item.contains("token_usage")) {
                    const auto& u = item["token_usage"];
                    entry.token_usage.input = u.value("input", int64_t{0});
                    entry.token_usage.output = u.value("output", int64_t{0});
                    entry.token_usage.reasoning = u.value("reasoning", int64_t{0});
                }
            }
            list.push_back(std::move(entry));
        }
        script.emplace(key, std::move(list));
    }
    return std::make_shared<FixtureBackend>(std::move(script), window);
}

std::shared_ptr<FixtureBackend> FixtureBackend::from_json_file(
    const std::filesystem::path& path) {
    return from_json(fs::read_text(path));
}

BackendOutput FixtureBackend::complete(const ModelRequest& request) {
    const ScriptEntry* entry = nullptr;
    {
        std::lock_guard lock(mutex_);
        observed_.push_back(request);
        std::string key = request.tag;
        auto it = script_.find(key);
        if (it == script_.end()) {
            key = "*";
            it = script_.find(key);
        }
        if (it == script_.end()) {
            throw Error("script_exhausted",
                        "no scripted responses for match-key '" + request.tag + "'");
        }
        size_t& cursor = cursor_[key];
        if (cursor >= it->second.size()) {
            throw Error("script_exhausted",
                        "match-key '" + key + "' exhausted after " +
                            std::to_string(it->second.size()) + " calls");
        }
        entry = &it->second[cursor++];
    }

    switch (entry->kind) {
    case ScriptEntry::Kind::fail_transient:
        throw TransientError(entry->text);
    case ScriptEntry::Kind::fail_fatal:
        throw Error("backend_fatal", entry->text);
    case ScriptEntry::Kind::respond:
        break;
    }
    BackendOutput output;
    output.text = entry->text;
    output.tool_traces = entry->tool_traces;
    TokenUsage usage = entry->token_usage;
    if (usage.input == 0) usage.input = estimate_request_tokens(request);
    if (usage.output == 0) usage.output = static_cast<int64_t>((entry->text.size() + 3) / 4);
    output.token_usage = usage;
    return output;
}

std::vector<ModelRequest> FixtureBackend::observed_requests() const {
    std::lock_guard lock(mutex_);
    return observed_;
}

size_t FixtureBackend::call_count() const {
    std::lock_guard lock(mutex_);
    return observed_.size();
}

} // namespace reviewkit::gateway

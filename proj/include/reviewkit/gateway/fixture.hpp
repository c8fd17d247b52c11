#pragma once

#include "reviewkit/gateway/backend.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>

namespace reviewkit::gateway {

// One scripted step for a match-key: a canned response or a scripted
// failure.
struct ScriptEntry {
    enum class Kind { respond, fail_transient, fail_fatal };

    Kind kind = Kind::respond;
    std::string text;     // response body, or failure message
    std::vector<ToolTrace> tool_traces;
    TokenUsage token_usage;

    static ScriptEntry respond(std::string body) {
        ScriptEntry e;
        e.text = std::move(body);
        return e;
    }
    static ScriptEntry fail_transient(std::string message) {
        ScriptEntry e;
        e.kind = Kind::fail_transient;
        e.text = std::move(message);
        return e;
    }
    static ScriptEntry fail_fatal(std::string message) {
        ScriptEntry e;
        e.kind = Kind::fail_fatal;
        e.text = std::move(message);
        return e;
    }
};

using Script = std::map<std::string, std::vector<ScriptEntry>>;

// Deterministic offline backend: serves entries in script order per
// match-key (request.tag, falling back to "*"). Throws
// Error("script_exhausted") once a key runs out of entries.
class FixtureBackend final : public ModelBackend {
public:
    explicit FixtureBackend(Script script, int64_t context_window = 400000);

    // Manifest format: {"context_window_tokens": N, "responses":
    //   {"<match-key>": [{"text": ...} | {"fail": "transient"|"fatal",
    //   "message": ...}, ...]}}
    static std::shared_ptr<FixtureBackend> from_json_file(const std::filesystem::path& path);
    static std::shared_ptr<FixtureBackend> from_json(const std::string& text);

    BackendOutput complete(const ModelRequest& request) override;
    int64_t context_window_tokens() const override { return context_window_; }

    // Requests observed so far, in call order. Lets tests assert on
    // invocation counts and request contents.
    std::vector<ModelRequest> observed_requests() const;
    size_t call_count() const;

private:
    Script script_;
    int64_t context_window_;
    mutable std::mutex mutex_;
    std::map<std::string, size_t> cursor_;
    std::vector<ModelRequest> observed_;
};

} // namespace reviewkit::gateway

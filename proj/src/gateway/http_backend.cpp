#include "reviewkit/gateway/http_backend.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace reviewkit::gateway {

using nlohmann::json;

HttpBackend::Options HttpBackend::options_from_env() {
    Options opts;
    if (const char* base = std::getenv("MODEL_API_BASE")) opts.base_url = base;
    if (const char* key = std::getenv("MODEL_API_KEY")) opts.api_key = key;
    if (opts.base_url.empty()) {
        throw Error("config", "MODEL_API_BASE is not set");
    }
    return opts;
}

HttpBackend::HttpBackend(Options options) : options_(std::move(options)) {
    if (options_.base_url.empty()) {
        throw Error("config", "remote backend needs a base URL");
    }
}

BackendOutput HttpBackend::complete(const ModelRequest& request) {
    json body;
    if (!options_.model.empty()) body["model"] = options_.model;
    body["effort"] = to_string(request.effort);
    if (request.max_output_tokens > 0) body["max_output_tokens"] = request.max_output_tokens;
    body["segments"] = json::array();
    for (const auto& seg : request.segments) {
        body["segments"].push_back({{"role", to_string(seg.role)}, {"text", seg.text}});
    }
    body["attachments"] = json::array();
    for (const auto& att : request.attachments) {
        body["attachments"].push_back(
            {{"kind", to_string(att.kind)}, {"document_id", att.document_id}});
    }
    body["tools"] = {{"code_execution", request.tools.code_execution},
                     {"web_search", request.tools.web_search}};
    if (!request.tools.web_search_scope_note.empty()) {
        body["tools"]["web_search_scope_note"] = request.tools.web_search_scope_note;
    }

    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_seconds);
    client.set_read_timeout(options_.timeout_seconds);
    httplib::Headers headers;
    if (!options_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + options_.api_key);
    }

    auto res = client.Post(options_.path, headers, body.dump(), "application/json");
    if (!res) {
        throw TransientError("transport error: " + httplib::to_string(res.error()));
    }
    if (res->status == 429 || res->status >= 500) {
        throw TransientError("service returned status " + std::to_string(res->status));
    }
    if (res->status != 200) {
        throw Error("non_retryable", "service returned status " + std::to_string(res->status));
    }

    json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("text")) {
        throw Error("non_retryable", "malformed response body from backend");
    }
    BackendOutput output;
    output.text = doc["text"].get<std::string>();
    if (doc.contains("tool_traces")) {
        for (const auto& t : doc["tool_traces"]) {
            ToolTrace trace;
            trace.kind = t.value("kind", "");
            trace.input = t.value("input", "");
            trace.output = t.value("output", "");
            trace.duration = std::chrono::milliseconds(t.value("duration_ms", int64_t{0}));
            output.tool_traces.push_back(std::move(trace));
        }
    }
    if (doc.contains("usage")) {
        output.token_usage.input = doc["usage"].value("input", int64_t{0});
        output.token_usage.output = doc["usage"].value("output", int64_t{0});
        output.token_usage.reasoning = doc["usage"].value("reasoning", int64_t{0});
    }
    return output;
}

} // namespace reviewkit::gateway

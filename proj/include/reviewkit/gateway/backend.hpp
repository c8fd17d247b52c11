#pragma once

#include "reviewkit/gateway/types.hpp"
#include "reviewkit/util/error.hpp"

namespace reviewkit::gateway {

// Raised by backends for failures worth retrying: rate limits, timeouts,
// 5xx-class service errors. Anything else (authorization, request
// validation) is a plain Error and fails the invocation immediately.
class TransientError : public Error {
public:
    explicit TransientError(const std::string& message) : Error("transient", message) {}
};

struct BackendOutput {
    std::string text;
    std::vector<ToolTrace> tool_traces;
    TokenUsage token_usage;
};

class ModelBackend {
public:
    virtual ~ModelBackend() = default;

    // Must not mutate the request. Throws TransientError for retryable
    // failures, Error otherwise.
    virtual BackendOutput complete(const ModelRequest& request) = 0;

    // Declared context window; requests estimated above it are rejected
    // before any network round trip.
    virtual int64_t context_window_tokens() const { return 400000; }
};

} // namespace reviewkit::gateway

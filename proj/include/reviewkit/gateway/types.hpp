#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace reviewkit::gateway {

enum class SegmentRole { system, user, assistant };

const char* to_string(SegmentRole role);
SegmentRole segment_role_from_string(const std::string& s);

struct Segment {
    SegmentRole role = SegmentRole::user;
    std::string text;

    bool operator==(const Segment&) const = default;
};

enum class AttachmentKind { pdf, markdown };

const char* to_string(AttachmentKind kind);

struct Attachment {
    AttachmentKind kind = AttachmentKind::pdf;
    std::string document_id;

    bool operator==(const Attachment&) const = default;
};

// The only two tool kinds the pipeline attaches. The scope note rides
// along with web search as an instructional constraint.
struct ToolSet {
    bool code_execution = false;
    bool web_search = false;
    std::string web_search_scope_note;

    bool operator==(const ToolSet&) const = default;
};

enum class Effort { low, medium, high };

const char* to_string(Effort effort);

struct ModelRequest {
    // Match-key for scripted backends; the stage engine sets this to the
    // stage name. Not part of the prompt content.
    std::string tag;
    std::vector<Segment> segments;
    std::vector<Attachment> attachments;
    ToolSet tools;
    Effort effort = Effort::high;
    int64_t max_output_tokens = 0;  // 0 = backend default

    bool operator==(const ModelRequest&) const = default;
};

struct ToolTrace {
    std::string kind;  // "code_execution" | "web_search"
    std::string input;
    std::string output;
    std::chrono::milliseconds duration{0};

    bool operator==(const ToolTrace&) const = default;
};

struct TokenUsage {
    int64_t input = 0;
    int64_t output = 0;
    int64_t reasoning = 0;

    bool operator==(const TokenUsage&) const = default;
};

struct ModelResponse {
    std::string text;
    std::vector<ToolTrace> tool_traces;
    TokenUsage token_usage;
    int attempts = 1;
};

// Rough prompt-size estimate used for context-window admission checks:
// ~4 characters per token plus a flat allowance per attached document.
int64_t estimate_request_tokens(const ModelRequest& request);

constexpr int64_t kAttachmentTokenAllowance = 2048;

} // namespace reviewkit::gateway

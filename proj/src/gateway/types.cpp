#include "reviewkit/gateway/types.hpp"

#include "reviewkit/util/error.hpp"

namespace reviewkit::gateway {

const char* to_string(SegmentRole role) {
    switch (role) {
    case SegmentRole::system: return "system";
    case SegmentRole::user: return "user";
    case SegmentRole::assistant: return "assistant";
    }
    return "?";
}

SegmentRole segment_role_from_string(const std::string& s) {
    if (s == "system") return SegmentRole::system;
    if (s == "user") return SegmentRole::user;
    if (s == "assistant") return SegmentRole::assistant;
    throw Error("invalid_request", "unknown segment role '" + s + "'");
}

const char* to_string(AttachmentKind kind) {
    return kind == AttachmentKind::pdf ? "pdf" : "markdown";
}

const char* to_string(Effort effort) {
    switch (effort) {
    case Effort::low: return "low";
    case Effort::medium: return "medium";
    case Effort::high: return "high";
    }
    return "?";
}

int64_t estimate_request_tokens(const ModelRequest& request) {
    int64_t chars = 0;
    for (const auto& seg : request.segments) {
        chars += static_cast<int64_t>(seg.text.size());
    }
    int64_t tokens = (chars + 3) / 4;
    tokens += static_cast<int64_t>(request.attachments.size()) * kAttachmentTokenAllowance;
    return tokens;
}

} // namespace reviewkit::gateway

#pragma once

#include "reviewkit/gateway/backend.hpp"

#include <memory>

namespace reviewkit::gateway {

// Remote text-generation backend over HTTP. Credentials come from the
// environment and are never echoed into logs or records.
class HttpBackend final : public ModelBackend {
public:
    struct Options {
        std::string base_url;  // e.g. "https://api.example.com"
        std::string api_key;
        std::string model;
        std::string path = "/v1/generate";
        int64_t context_window = 400000;
        int timeout_seconds = 600;
    };

    // Reads MODEL_API_BASE and MODEL_API_KEY. Error("config") if the
    // base URL is missing.
    static Options options_from_env();

    explicit HttpBackend(Options options);

    BackendOutput complete(const ModelRequest& request) override;
    int64_t context_window_tokens() const override { return options_.context_window; }

private:
    Options options_;
};

} // namespace reviewkit::gateway

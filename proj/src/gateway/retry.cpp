#include "reviewkit/gateway/retry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace reviewkit::gateway {

std::chrono::milliseconds RetryPolicy::nominal_delay(int k) const {
    double ms = static_cast<double>(base_delay.count()) * std::pow(factor, k);
    return std::chrono::milliseconds(static_cast<int64_t>(std::llround(ms)));
}

std::vector<std::chrono::milliseconds> RetryPolicy::planned_delays() const {
    std::vector<std::chrono::milliseconds> delays;
    delays.reserve(static_cast<size_t>(std::max(0, max_retries)));
    for (int k = 0; k < max_retries; ++k) delays.push_back(nominal_delay(k));
    return delays;
}

ModelResponse invoke(const ModelRequest& request, ModelBackend& backend,
                     const RetryPolicy& policy, Sleeper& sleeper) {
    if (request.segments.empty()) {
        throw Error("invalid_request", "request has no prompt segments");
    }
    if (policy.max_retries < 0) {
        throw Error("invalid_request", "negative retry budget");
    }
    const int64_t estimate = estimate_request_tokens(request);
    if (estimate > backend.context_window_tokens()) {
        throw Error("request_too_large",
                    "estimated " + std::to_string(estimate) + " tokens exceeds window of " +
                        std::to_string(backend.context_window_tokens()));
    }

    std::mt19937_64 jitter_rng(policy.jitter_seed);
    std::string last_cause;
    std::chrono::milliseconds previous_wait{0};
    for (int attempt = 1; attempt <= policy.max_retries + 1; ++attempt) {
        try {
            BackendOutput output = backend.complete(request);
            ModelResponse response;
            response.text = std::move(output.text);
            response.tool_traces = std::move(output.tool_traces);
            response.token_usage = output.token_usage;
            response.attempts = attempt;
            return response;
        } catch (const TransientError& e) {
            last_cause = e.what();
            if (attempt == policy.max_retries + 1) break;
            auto nominal = policy.nominal_delay(attempt - 1);
            auto wait = nominal;
            if (policy.jitter > 0.0) {
                std::uniform_real_distribution<double> dist(-policy.jitter, policy.jitter);
                double scaled = static_cast<double>(nominal.count()) * (1.0 + dist(jitter_rng));
                wait = std::chrono::milliseconds(
                    std::max<int64_t>(0, static_cast<int64_t>(std::llround(scaled))));
            }
            // Waits never shrink, jitter or not.
            wait = std::max(wait, previous_wait);
            previous_wait = wait;
            sleeper.sleep_for(wait);
        }
    }
    throw Error("exhausted_retries",
                "gave up after " + std::to_string(policy.max_retries + 1) +
                    " attempts; last cause: " + last_cause);
}

} // namespace reviewkit::gateway

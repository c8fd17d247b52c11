#pragma once

#include "reviewkit/gateway/backend.hpp"
#include "reviewkit/util/clock.hpp"

#include <cstdint>

namespace reviewkit::gateway {

// delay(k) = base_delay * factor^k, optionally jittered by +-jitter
// fraction. k counts completed (failed) attempts, so the first wait uses
// k = 0.
struct RetryPolicy {
    int max_retries = 5;
    std::chrono::milliseconds base_delay{1000};
    double factor = 2.0;
    double jitter = 0.0;       // fraction of the nominal delay, in [0, 1]
    uint64_t jitter_seed = 0;  // jitter is deterministic for a fixed seed

    // Nominal (jitter-free) wait before retry k+1, k in [0, max_retries).
    std::chrono::milliseconds nominal_delay(int k) const;

    // All nominal delays, in order. [1, 2, 4, 8, 16]s for the defaults.
    std::vector<std::chrono::milliseconds> planned_delays() const;
};

// Runs one request against a backend under the retry policy.
//
// Throws Error("invalid_request") for structurally invalid requests,
// Error("request_too_large") when the estimate exceeds the backend's
// declared window, Error("exhausted_retries") after max_retries + 1
// transient failures (message carries the last cause), and propagates
// non-transient backend errors unchanged.
ModelResponse invoke(const ModelRequest& request, ModelBackend& backend,
                     const RetryPolicy& policy, Sleeper& sleeper);

} // namespace reviewkit::gateway

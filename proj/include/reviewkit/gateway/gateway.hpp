#pragma once

#include "reviewkit/gateway/retry.hpp"

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>

namespace reviewkit::gateway {

// Process-wide admission control: at most `limit` requests in flight
// across every backend. Rate limits at the service side make this
// first-class rather than an afterthought.
class ConcurrencyLimiter {
public:
    explicit ConcurrencyLimiter(int limit);

    void acquire();
    void release();
    int in_flight() const;

private:
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    int limit_;
    int in_flight_ = 0;
};

struct GatewayOptions {
    int max_in_flight = 8;
    RetryPolicy retry;
};

// Shared entry point for every paper worker: backend registry, retry
// loop and the concurrency limiter.
class Gateway {
public:
    explicit Gateway(GatewayOptions options = {},
                     std::shared_ptr<Sleeper> sleeper = std::make_shared<RealSleeper>());

    // Error("duplicate_backend") when the id is taken.
    void register_backend(const std::string& id, std::shared_ptr<ModelBackend> backend);

    // Error("unknown_backend") when unresolvable.
    std::shared_ptr<ModelBackend> resolve(const std::string& id) const;

    ModelResponse invoke(const ModelRequest& request, const std::string& backend_id) const;
    ModelResponse invoke(const ModelRequest& request, ModelBackend& backend) const;

    const RetryPolicy& retry_policy() const { return options_.retry; }

private:
    GatewayOptions options_;
    std::shared_ptr<Sleeper> sleeper_;
    mutable ConcurrencyLimiter limiter_;
    mutable std::mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<ModelBackend>> backends_;
};

} // namespace reviewkit::gateway

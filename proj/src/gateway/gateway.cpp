#include "reviewkit/gateway/gateway.hpp"

namespace reviewkit::gateway {

ConcurrencyLimiter::ConcurrencyLimiter(int limit) : limit_(limit < 1 ? 1 : limit) {}

void ConcurrencyLimiter::acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limit_; });
    ++in_flight_;
}

void ConcurrencyLimiter::release() {
    {
        std::lock_guard lock(mutex_);
        --in_flight_;
    }
    cv_.notify_one();
}

int ConcurrencyLimiter::in_flight() const {
    std::lock_guard lock(mutex_);
    return in_flight_;
}

namespace {

struct LimiterGuard {
    explicit LimiterGuard(ConcurrencyLimiter& limiter) : limiter_(limiter) {
        limiter_.acquire();
    }
    ~LimiterGuard() { limiter_.release(); }
    ConcurrencyLimiter& limiter_;
};

} // namespace

Gateway::Gateway(GatewayOptions options, std::shared_ptr<Sleeper> sleeper)
    : options_(options), sleeper_(std::move(sleeper)), limiter_(options.max_in_flight) {}

void Gateway::register_backend(const std::string& id, std::shared_ptr<ModelBackend> backend) {
    std::lock_guard lock(registry_mutex_);
    auto [it, inserted] = backends_.emplace(id, std::move(backend));
    (void)it;
    if (!inserted) {
        throw Error("duplicate_backend", "backend id '" + id + "' already registered");
    }
}

std::shared_ptr<ModelBackend> Gateway::resolve(const std::string& id) const {
    std::lock_guard lock(registry_mutex_);
    auto it = backends_.find(id);
    if (it == backends_.end()) {
        throw Error("unknown_backend", "no backend registered as '" + id + "'");
    }
    return it->second;
}

ModelResponse Gateway::invoke(const ModelRequest& request, const std::string& backend_id) const {
    auto backend = resolve(backend_id);
    return invoke(request, *backend);
}

ModelResponse Gateway::invoke(const ModelRequest& request, ModelBackend& backend) const {
    LimiterGuard guard(limiter_);
    return gateway::invoke(request, backend, options_.retry, *sleeper_);
}

} // namespace reviewkit::gateway

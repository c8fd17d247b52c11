#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace reviewkit {

// Wall-clock abstraction. Mock runs substitute a deterministic clock so
// that record files and reports are byte-reproducible.
class Clock {
public:
    using time_point = std::chrono::system_clock::time_point;

    virtual ~Clock() = default;
    virtual time_point now() = 0;
};

class SystemClock final : public Clock {
public:
    time_point now() override { return std::chrono::system_clock::now(); }
};

// Starts at a fixed epoch and advances by a fixed step per observation.
class FixedStepClock final : public Clock {
public:
    explicit FixedStepClock(time_point start = time_point{},
                            std::chrono::milliseconds step = std::chrono::seconds(1))
        : next_(start), step_(step) {}

    time_point now() override {
        std::lock_guard lock(mutex_);
        time_point t = next_;
        next_ += step_;
        return t;
    }

private:
    std::mutex mutex_;
    time_point next_;
    std::chrono::milliseconds step_;
};

// UTC ISO-8601 with second precision, e.g. "2026-02-14T09:30:00Z".
std::string format_utc(Clock::time_point tp);

// Injectable sleep so retry tests observe planned delays instead of waiting.
class Sleeper {
public:
    virtual ~Sleeper() = default;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class RealSleeper final : public Sleeper {
public:
    void sleep_for(std::chrono::milliseconds d) override;
};

class RecordingSleeper final : public Sleeper {
public:
    void sleep_for(std::chrono::milliseconds d) override {
        std::lock_guard lock(mutex_);
        recorded_.push_back(d);
    }
    std::vector<std::chrono::milliseconds> recorded() const {
        std::lock_guard lock(mutex_);
        return recorded_;
    }

private:
    mutable std::mutex mutex_;
    std::vector<std::chrono::milliseconds> recorded_;
};

} // namespace reviewkit

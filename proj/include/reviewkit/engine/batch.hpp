#pragma once

#include "reviewkit/engine/pipeline.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace reviewkit::engine {

struct RolloutPolicy {
    enum class Gate { manual_approval_required, auto_continue };

    double initial_fraction = 0.30;
    Gate gate = Gate::manual_approval_required;
};

// floor(fraction * n); fraction clamped to [0, 1].
size_t initial_batch_size(size_t n, double fraction);

enum class BatchState { running, awaiting_approval, completed, cancelled };
const char* to_string(BatchState s);

enum class PaperState { pending, running, done, failed };
const char* to_string(PaperState s);

struct PaperStatus {
    std::string paper_id;
    PaperState state = PaperState::pending;
    std::string error;       // failure cause, when failed
    std::string started_at;  // UTC ISO-8601, when run
    std::string finished_at;
    int stages_completed = 0;
};

struct BatchReport {
    BatchState state = BatchState::running;
    std::vector<PaperStatus> papers;
    size_t processed = 0;  // done
    size_t failed = 0;
    size_t pending = 0;    // pending + running

    std::string to_json() const;
    std::string to_table() const;  // human-readable status table
};

// Staged rollout over a list of papers: the initial floor(fraction*N)
// papers run first; with a manual gate the batch parks in
// awaiting_approval until approve() releases the remainder. Per-paper
// failures are recorded, never thrown. Drivable from other threads
// (approve / report / cancel).
class BatchRun {
public:
    BatchRun(std::vector<ingest::PaperBundle> bundles, StagePlan plan,
             const gateway::Gateway& gateway, PromptRegistry registry, CheckpointStore store,
             RolloutPolicy rollout, int workers, std::shared_ptr<Clock> clock);
    ~BatchRun();

    BatchRun(const BatchRun&) = delete;
    BatchRun& operator=(const BatchRun&) = delete;

    void start();

    // Error("wrong_state") unless awaiting approval.
    void approve();

    void cancel();

    // Blocks until the batch parks (awaiting_approval) or finishes.
    BatchState wait();

    BatchState state() const;
    BatchReport report() const;

private:
    void worker_loop();
    void enqueue_range(size_t begin, size_t end);
    void on_paper_finished();
    void run_one(size_t index);

    std::vector<ingest::PaperBundle> bundles_;
    StagePlan plan_;
    const gateway::Gateway& gateway_;
    PromptRegistry registry_;
    CheckpointStore store_;
    RolloutPolicy rollout_;
    int workers_;
    std::shared_ptr<Clock> clock_;

    mutable std::mutex mutex_;
    std::condition_variable work_cv_;
    std::condition_variable state_cv_;
    std::deque<size_t> queue_;
    std::vector<PaperStatus> statuses_;
    std::vector<std::thread> threads_;
    BatchState state_ = BatchState::running;
    size_t initial_count_ = 0;
    size_t dispatched_ = 0;  // indexes handed to the queue so far
    size_t finished_ = 0;    // papers done or failed
    bool stopping_ = false;
    bool started_ = false;
    std::atomic<bool> cancel_flag_{false};
};

} // namespace reviewkit::engine

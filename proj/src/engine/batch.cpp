#include "reviewkit/engine/batch.hpp"

#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace reviewkit::engine {

using nlohmann::json;

size_t initial_batch_size(size_t n, double fraction) {
    double f = std::clamp(fraction, 0.0, 1.0);
    return static_cast<size_t>(std::floor(f * static_cast<double>(n)));
}

const char* to_string(BatchState s) {
    switch (s) {
    case BatchState::running: return "RUNNING";
    case BatchState::awaiting_approval: return "AWAITING_APPROVAL";
    case BatchState::completed: return "COMPLETED";
    case BatchState::cancelled: return "CANCELLED";
    }
    return "?";
}

const char* to_string(PaperState s) {
    switch (s) {
    case PaperState::pending: return "pending";
    case PaperState::running: return "running";
    case PaperState::done: return "done";
    case PaperState::failed: return "failed";
    }
    return "?";
}

std::string BatchReport::to_json() const {
    json doc;
    doc["state"] = engine::to_string(state);
    doc["processed"] = processed;
    doc["failed"] = failed;
    doc["pending"] = pending;
    doc["papers"] = json::array();
    for (const auto& p : papers) {
        doc["papers"].push_back({{"paper_id", p.paper_id},
                                 {"state", engine::to_string(p.state)},
                                 {"error", p.error},
                                 {"started_at", p.started_at},
                                 {"finished_at", p.finished_at},
                                 {"stages_completed", p.stages_completed}});
    }
    return doc.dump(2) + "\n";
}

std::string BatchReport::to_table() const {
    std::ostringstream out;
    out << "batch state: " << engine::to_string(state) << "  (done " << processed
        << ", failed " << failed << ", pending " << pending << ")\n";
    out << "paper_id                         state     stages  finished_at\n";
    for (const auto& p : papers) {
        std::string id = p.paper_id.size() > 32 ? p.paper_id.substr(0, 32) : p.paper_id;
        out << id << std::string(33 - id.size(), ' ')
            << engine::to_string(p.state) << std::string(10 - strlen(engine::to_string(p.state)), ' ')
            << p.stages_completed << "       " << p.finished_at;
        if (!p.error.empty()) out << "  " << p.error;
        out << "\n";
    }
    return out.str();
}

BatchRun::BatchRun(std::vector<ingest::PaperBundle> bundles, StagePlan plan,
                   const gateway::Gateway& gateway, PromptRegistry registry,
                   CheckpointStore store, RolloutPolicy rollout, int workers,
                   std::shared_ptr<Clock> clock)
    : bundles_(std::move(bundles)), plan_(std::move(plan)), gateway_(gateway),
      registry_(std::move(registry)), store_(std::move(store)), rollout_(rollout),
      workers_(std::max(1, workers)), clock_(std::move(clock)) {
    if (bundles_.empty()) {
        throw Error("invalid_argument", "batch needs at least one paper");
    }
    plan_.validate(registry_);
    statuses_.resize(bundles_.size());
    for (size_t i = 0; i < bundles_.size(); ++i) {
        statuses_[i].paper_id = bundles_[i].paper_id;
    }
}

BatchRun::~BatchRun() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
}

void BatchRun::enqueue_range(size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) queue_.push_back(i);
    dispatched_ = std::max(dispatched_, end);
}

void BatchRun::start() {
    {
        std::lock_guard lock(mutex_);
        if (started_) throw Error("wrong_state", "batch already started");
        started_ = true;
        initial_count_ = initial_batch_size(bundles_.size(), rollout_.initial_fraction);
        // A gated batch with a zero-size initial phase parks immediately.
        if (rollout_.gate == RolloutPolicy::Gate::auto_continue) {
            enqueue_range(0, bundles_.size());
        } else {
            enqueue_range(0, initial_count_);
            if (initial_count_ == 0) state_ = BatchState::awaiting_approval;
        }
    }
    work_cv_.notify_all();
    state_cv_.notify_all();
    for (int i = 0; i < workers_; ++i) {
        threads_.emplace_back([this] { worker_loop(); });
    }
}

void BatchRun::run_one(size_t index) {
    {
        std::lock_guard lock(mutex_);
        statuses_[index].state = PaperState::running;
        statuses_[index].started_at = format_utc(clock_->now());
    }
    PaperStatus update;
    try {
        auto result = run_pipeline(bundles_[index], plan_, gateway_, registry_, store_,
                                   *clock_, &cancel_flag_);
        update.state = PaperState::done;
        update.stages_completed = static_cast<int>(result.records.size());
    } catch (const Error& e) {
        update.state = PaperState::failed;
        update.error = e.what();
        update.stages_completed =
            static_cast<int>(store_.load(bundles_[index].paper_id).records.size());
    }
    {
        std::lock_guard lock(mutex_);
        statuses_[index].state = update.state;
        statuses_[index].error = update.error;
        statuses_[index].stages_completed = update.stages_completed;
        statuses_[index].finished_at = format_utc(clock_->now());
        ++finished_;
        on_paper_finished();
    }
    state_cv_.notify_all();
}

void BatchRun::on_paper_finished() {
    // mutex_ held.
    if (state_ != BatchState::running) return;
    if (finished_ == bundles_.size()) {
        state_ = BatchState::completed;
        return;
    }
    const bool phase_drained = queue_.empty() && finished_ == dispatched_;
    if (phase_drained && dispatched_ < bundles_.size()) {
        if (rollout_.gate == RolloutPolicy::Gate::manual_approval_required) {
            state_ = BatchState::awaiting_approval;
        } else {
            enqueue_range(dispatched_, bundles_.size());
            work_cv_.notify_all();
        }
    }
}

void BatchRun::worker_loop() {
    while (true) {
        size_t index = 0;
        {
            std::unique_lock lock(mutex_);
            work_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
            if (stopping_) return;
            index = queue_.front();
            queue_.pop_front();
        }
        run_one(index);
        work_cv_.notify_all();
    }
}

void BatchRun::approve() {
    {
        std::lock_guard lock(mutex_);
        if (state_ != BatchState::awaiting_approval) {
            throw Error("wrong_state", "batch is not awaiting approval (state " +
                                           std::string(engine::to_string(state_)) + ")");
        }
        state_ = BatchState::running;
        enqueue_range(dispatched_, bundles_.size());
        if (dispatched_ == bundles_.size() && finished_ == bundles_.size()) {
            state_ = BatchState::completed;
        }
    }
    work_cv_.notify_all();
    state_cv_.notify_all();
}

void BatchRun::cancel() {
    cancel_flag_.store(true);
    {
        std::lock_guard lock(mutex_);
        queue_.clear();
        stopping_ = true;
        state_ = BatchState::cancelled;
    }
    work_cv_.notify_all();
    state_cv_.notify_all();
}

BatchState BatchRun::wait() {
    std::unique_lock lock(mutex_);
    state_cv_.wait(lock, [&] {
        if (state_ == BatchState::completed || state_ == BatchState::cancelled) return true;
        if (state_ == BatchState::awaiting_approval) {
            // Parked only once in-flight papers have drained.
            return finished_ == dispatched_;
        }
        return false;
    });
    return state_;
}

BatchState BatchRun::state() const {
    std::lock_guard lock(mutex_);
    return state_;
}

BatchReport BatchRun::report() const {
    std::lock_guard lock(mutex_);
    BatchReport report;
    report.state = state_;
    report.papers = statuses_;
    for (const auto& p : statuses_) {
        switch (p.state) {
        case PaperState::done: ++report.processed; break;
        case PaperState::failed: ++report.failed; break;
        case PaperState::pending:
        case PaperState::running: ++report.pending; break;
        }
    }
    return report;
}

} // namespace reviewkit::engine

#include "commands.hpp"

#include "reviewkit/engine/batch.hpp"
#include "reviewkit/engine/pipeline.hpp"
#include "reviewkit/ingest/bundle.hpp"
#include "reviewkit/util/fs.hpp"

#include <json.hpp>

#include <iostream>
#include <thread>

namespace rkcli {

using namespace reviewkit;
using nlohmann::json;

namespace {

ingest::PaperBundle ingest_paper(Context& ctx, const std::filesystem::path& path,
                                 const std::string& paper_id) {
    auto raw = fs::read_bytes(path);
    ingest::IngestOptions options;
    options.target_dpi = static_cast<int>(ctx.config.get_int("ingest.target_dpi", 250));
    return ingest::ingest_pdf(raw, *ctx.ocr, options,
                              paper_id.empty() ? path.stem().string() : paper_id);
}

void write_run_manifest(Context& ctx, const std::filesystem::path& out,
                        const std::string& plan_digest) {
    json doc;
    doc["config_digest"] = ctx.config.digest();
    doc["plan_digest"] = plan_digest;
    doc["seed"] = ctx.seed;
    doc["mock"] = ctx.mock;
    doc["created_at"] = format_utc(ctx.clock->now());
    fs::write_text(out / "run.json", doc.dump(2) + "\n");
}

std::vector<std::pair<std::string, std::filesystem::path>> read_batch_manifest(
    const std::filesystem::path& path) {
    json doc = json::parse(fs::read_text(path), nullptr, false);
    if (doc.is_discarded() || !doc.contains("papers") || !doc["papers"].is_array()) {
        throw Error("invalid_manifest",
                    "batch manifest must be {\"papers\": [{\"id\", \"path\"}...]}");
    }
    std::vector<std::pair<std::string, std::filesystem::path>> papers;
    auto base = path.parent_path();
    for (const auto& item : doc["papers"]) {
        std::string id = item.value("id", "");
        std::filesystem::path p = item.value("path", "");
        if (p.is_relative()) p = base / p;
        if (id.empty()) id = p.stem().string();
        papers.emplace_back(id, p);
    }
    if (papers.empty()) throw Error("invalid_manifest", "batch manifest lists no papers");
    return papers;
}

int run_batch_phase(Context& ctx, const std::filesystem::path& manifest_path,
                    const std::filesystem::path& out, double fraction,
                    engine::RolloutPolicy::Gate gate, int workers, bool json_output) {
    auto papers = read_batch_manifest(manifest_path);

    std::vector<ingest::PaperBundle> bundles;
    std::vector<engine::PaperStatus> pre_failed;
    for (const auto& [id, path] : papers) {
        try {
            bundles.push_back(ingest_paper(ctx, path, id));
        } catch (const Error& e) {
            engine::PaperStatus status;
            status.paper_id = id;
            status.state = engine::PaperState::failed;
            status.error = e.what();
            pre_failed.push_back(std::move(status));
        }
    }
    if (bundles.empty()) {
        throw Error("invalid_manifest", "no paper in the batch manifest could be ingested");
    }

    auto plan = engine::StagePlan::default_plan(ctx.backend_id);
    engine::RolloutPolicy rollout{fraction, gate};
    // Mock runs stay single-worker so record files are byte-reproducible.
    int effective_workers = ctx.mock ? 1 : std::max(1, workers);

    engine::BatchRun batch(std::move(bundles), plan, *ctx.gateway, ctx.prompts,
                           engine::CheckpointStore(out / "papers"), rollout,
                           effective_workers, ctx.clock);
    batch.start();

    std::atomic<bool> watcher_done{false};
    std::thread watcher([&] {
        while (!watcher_done.load()) {
            if (interrupt_flag().load()) {
                batch.cancel();
                return;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        }
    });
    auto final_state = batch.wait();
    watcher_done.store(true);
    watcher.join();

    auto report = batch.report();
    for (auto& status : pre_failed) report.papers.push_back(status);
    report.failed += pre_failed.size();

    fs::write_text(out / "batch_report.json", report.to_json());
    write_run_manifest(ctx, out, plan.digest(ctx.prompts));

    // Review artifacts for completed papers.
    engine::CheckpointStore store(out / "papers");
    for (const auto& status : report.papers) {
        if (status.state != engine::PaperState::done) continue;
        auto cp = store.load(status.paper_id);
        if (!cp.records.empty()) {
            fs::write_text(out / "papers" / status.paper_id / "review.md",
                           cp.records.back().response_text);
        }
    }

    if (json_output) {
        std::cout << report.to_json();
    } else {
        std::cout << report.to_table();
    }

    if (interrupt_flag().load()) {
        std::cerr << "interrupted; checkpoints kept under " << (out / "papers").string()
                  << "\n";
        return kInterrupted;
    }
    if (final_state == engine::BatchState::awaiting_approval) {
        std::cerr << "initial rollout complete; state AWAITING_APPROVAL persisted.\n"
                  << "continue with: reviewkit review approve --manifest "
                  << manifest_path.string() << " --out " << out.string()
                  << (ctx.mock ? " --mock" : "") << "\n";
    }
    return kOk;
}

} // namespace

int cmd_review_run(const ReviewRunArgs& args) {
    try {
        Context ctx = make_context(args.context);
        if (!std::filesystem::exists(args.paper)) {
            throw Error("input", "paper file not found: " + args.paper);
        }
        const std::filesystem::path out(args.out);
        auto bundle = ingest_paper(ctx, args.paper, args.paper_id);
        ingest::write_bundle_dir(bundle, out / "papers" / bundle.paper_id / "bundle");

        auto plan = engine::StagePlan::default_plan(ctx.backend_id);
        engine::CheckpointStore store(out / "papers");
        auto result = engine::run_pipeline(bundle, plan, *ctx.gateway, ctx.prompts, store,
                                           *ctx.clock, &interrupt_flag());

        fs::write_text(out / "papers" / bundle.paper_id / "review.md", result.review_body);
        write_run_manifest(ctx, out, plan.digest(ctx.prompts));
        std::cout << "review written: "
                  << (out / "papers" / bundle.paper_id / "review.md").string() << "\n"
                  << "stage records:  "
                  << (out / "papers" / bundle.paper_id / "records.jsonl").string() << " ("
                  << result.records.size() << " stages)\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_review_batch(const ReviewBatchArgs& args) {
    try {
        Context ctx = make_context(args.context);
        if (!std::filesystem::exists(args.manifest)) {
            throw Error("input", "batch manifest not found: " + args.manifest);
        }
        auto gate = args.gate == "auto" ? engine::RolloutPolicy::Gate::auto_continue
                                        : engine::RolloutPolicy::Gate::manual_approval_required;
        return run_batch_phase(ctx, args.manifest, args.out, args.rollout_fraction, gate,
                               args.workers, args.json_output);
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_review_approve(const ReviewApproveArgs& args) {
    try {
        Context ctx = make_context(args.context);
        const std::filesystem::path out(args.out);
        const auto report_path = out / "batch_report.json";
        if (!std::filesystem::exists(report_path)) {
            throw Error("wrong_state", "no batch report under " + args.out);
        }
        json report = json::parse(fs::read_text(report_path));
        if (report.value("state", "") != "AWAITING_APPROVAL") {
            throw Error("wrong_state", "batch state is '" + report.value("state", "") +
                                           "', not AWAITING_APPROVAL");
        }
        // Completed papers resume to zero invocations via their checkpoints;
        // the remainder runs to completion.
        return run_batch_phase(ctx, args.manifest, out, 1.0,
                               engine::RolloutPolicy::Gate::auto_continue, args.workers,
                               args.json_output);
    } catch (const Error& e) {
        return fail(e);
    }
}

} // namespace rkcli

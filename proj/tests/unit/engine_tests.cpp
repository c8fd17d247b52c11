#include <doctest.h>

#include "reviewkit/engine/batch.hpp"
#include "reviewkit/engine/pipeline.hpp"
#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"

#include "support/engine_fixtures.hpp"

#include <filesystem>

using namespace reviewkit;
using namespace reviewkit::engine;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
        : path(std::filesystem::temp_directory_path() / ("rk_engine_" + tag)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::unique_ptr<gateway::Gateway> make_gateway(std::shared_ptr<gateway::FixtureBackend> backend) {
    gateway::GatewayOptions options;
    options.retry.base_delay = std::chrono::milliseconds(0);
    auto gw = std::make_unique<gateway::Gateway>(options, std::make_shared<RecordingSleeper>());
    gw->register_backend("fixture", std::move(backend));
    return gw;
}

} // namespace

TEST_CASE("default plan: exact order and tool assignment") {
    auto plan = StagePlan::default_plan("fixture");
    REQUIRE(plan.stages.size() == 8);
    for (size_t i = 0; i < plan.stages.size(); ++i) {
        CHECK(plan.stages[i].name == kDefaultStageOrder[i]);
    }
    for (const auto& stage : plan.stages) {
        const bool wants_code = stage.name == "evaluations" || stage.name == "correctness";
        const bool wants_search = stage.name == "significance";
        CHECK(stage.tools.code_execution == wants_code);
        CHECK(stage.tools.web_search == wants_search);
        if (wants_search) CHECK_FALSE(stage.tools.web_search_scope_note.empty());
    }
    plan.validate(PromptRegistry::with_defaults());
}

TEST_CASE("build_stage_context: first stage is base + stage prompt") {
    auto bundle = fixtures::tiny_bundle("ctx-1");
    auto plan = StagePlan::default_plan("fixture");
    auto registry = PromptRegistry::with_defaults();

    auto request = build_stage_context(bundle, plan, 0, {}, registry);
    REQUIRE(request.segments.size() == 2);
    CHECK(request.segments[0].role == gateway::SegmentRole::system);
    CHECK(request.segments[0].text == registry.get("base").text);
    CHECK(request.segments[1].text == registry.get("story").text);
    REQUIRE(request.attachments.size() == 2);
    CHECK(request.attachments[0].kind == gateway::AttachmentKind::pdf);
    CHECK(request.attachments[1].kind == gateway::AttachmentKind::markdown);
    CHECK(request.tag == "story");
}

TEST_CASE("build_stage_context: five prior stages appear in order, verbatim") {
    auto bundle = fixtures::tiny_bundle("ctx-2");
    auto plan = StagePlan::default_plan("fixture");
    auto registry = PromptRegistry::with_defaults();

    std::vector<StageRecord> prior;
    for (size_t i = 0; i < 5; ++i) {
        StageRecord r;
        r.stage = plan.stages[i].name;
        r.response_text = "result of " + r.stage;
        prior.push_back(r);
    }
    auto request = build_stage_context(bundle, plan, 5, prior, registry);
    // base + 5 * (prompt, result) + current prompt
    REQUIRE(request.segments.size() == 12);
    for (size_t i = 0; i < 5; ++i) {
        const auto& prompt_seg = request.segments[1 + 2 * i];
        const auto& result_seg = request.segments[2 + 2 * i];
        CHECK(prompt_seg.role == gateway::SegmentRole::user);
        CHECK(prompt_seg.text == registry.get(plan.stages[i].prompt_id).text);
        CHECK(result_seg.role == gateway::SegmentRole::assistant);
        CHECK(result_seg.text == prior[i].response_text);
    }
    CHECK(request.segments.back().text == registry.get("initial_review").text);

    SUBCASE("prior prefix is enforced") {
        CHECK_THROWS_AS(
            (void)build_stage_context(bundle, plan, 3, prior, registry), Error);
    }
}

TEST_CASE("build_stage_context: evaluations stage carries the code tool only") {
    auto bundle = fixtures::tiny_bundle("ctx-3");
    auto plan = StagePlan::default_plan("fixture");
    auto registry = PromptRegistry::with_defaults();

    std::vector<StageRecord> prior;
    for (size_t i = 0; i < 2; ++i) {
        StageRecord r;
        r.stage = plan.stages[i].name;
        r.response_text = "r";
        prior.push_back(r);
    }
    auto request = build_stage_context(bundle, plan, 2, prior, registry);
    CHECK(request.tools.code_execution);
    CHECK_FALSE(request.tools.web_search);
}

TEST_CASE("context overflow: traces drop first, then oldest results elide") {
    auto bundle = fixtures::tiny_bundle("ctx-4");
    auto plan = StagePlan::default_plan("fixture");
    auto registry = PromptRegistry::with_defaults();

    std::vector<StageRecord> prior;
    for (size_t i = 0; i < 3; ++i) {
        StageRecord r;
        r.stage = plan.stages[i].name;
        r.response_text = std::string(4000, 'a' + static_cast<char>(i));
        if (i == 0) r.tool_traces.push_back({"code_execution", std::string(8000, 'x'), "out", {}});
        prior.push_back(r);
    }

    // Race-to-fit budget: enough for prompts + two results, not the traces.
    auto unlimited = build_stage_context(bundle, plan, 3, prior, registry, 0);
    auto est = gateway::estimate_request_tokens(unlimited);
    auto trimmed = build_stage_context(bundle, plan, 3, prior, registry, est - 1500);

    // The trace block is gone, results still present.
    CHECK(trimmed.segments[2].text == prior[0].response_text);
    CHECK(trimmed.segments[4].text == prior[1].response_text);

    // Tighter budget: the oldest result gets elided, newest survives.
    auto tight = build_stage_context(bundle, plan, 3, prior, registry, est - 2600);
    CHECK(tight.segments[2].text == kElisionMarker);
    CHECK(tight.segments[6].text == prior[2].response_text);
    // Base instruction and current prompt always survive.
    CHECK(tight.segments[0].text == registry.get("base").text);
    CHECK(tight.segments.back().text == registry.get(plan.stages[3].prompt_id).text);
}

TEST_CASE("run_pipeline: eight records in plan order, checkpointed") {
    TempDir dir("pipeline");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;
    auto registry = PromptRegistry::with_defaults();
    auto plan = StagePlan::default_plan("fixture");
    auto bundle = fixtures::tiny_bundle("run-1");
    CheckpointStore store(dir.path);
    FixedStepClock clock;

    auto result = run_pipeline(bundle, plan, gw, registry, store, clock);
    REQUIRE(result.records.size() == 8);
    for (size_t i = 0; i < 8; ++i) CHECK(result.records[i].stage == kDefaultStageOrder[i]);
    CHECK(result.review_body == fixtures::kScriptedFinalReview);
    CHECK(result.invoked_stages == 8);
    CHECK(backend->call_count() == 8);

    auto cp = store.load("run-1");
    CHECK(cp.completed.size() == 8);
    CHECK(cp.plan_digest == plan.digest(registry));

    SUBCASE("context monotonicity: later requests contain earlier prompt+result") {
        auto seen = backend->observed_requests();
        REQUIRE(seen.size() == 8);
        for (size_t later = 1; later < 8; ++later) {
            for (size_t earlier = 0; earlier < later; ++earlier) {
                bool has_prompt = false, has_result = false;
                const std::string prompt = registry.get(plan.stages[earlier].prompt_id).text;
                const std::string result_text = result.records[earlier].response_text;
                for (const auto& seg : seen[later].segments) {
                    if (seg.text == prompt) has_prompt = true;
                    if (seg.text.find(result_text) != std::string::npos) has_result = true;
                }
                CHECK(has_prompt);
                CHECK(has_result);
            }
        }
    }
}

TEST_CASE("run_pipeline rejects an empty plan") {
    TempDir dir("emptyplan");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;
    CheckpointStore store(dir.path);
    FixedStepClock clock;
    StagePlan plan;  // no stages
    auto bundle = fixtures::tiny_bundle("run-2");
    try {
        (void)run_pipeline(bundle, plan, gw, PromptRegistry::with_defaults(), store, clock);
        FAIL("expected invalid_plan");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid_plan");
    }
}

TEST_CASE("failure mid-plan checkpoints the completed prefix; resume finishes") {
    TempDir dir("resume");
    auto registry = PromptRegistry::with_defaults();
    auto plan = StagePlan::default_plan("fixture");
    auto bundle = fixtures::tiny_bundle("run-3");
    FixedStepClock clock;

    // Stage index 3 (correctness) fails fatally.
    auto failing = std::make_shared<gateway::FixtureBackend>(
        fixtures::full_run_script(1, /*fail_fatal_at_stage=*/3));
    {
        auto gw_ptr = make_gateway(failing); auto& gw = *gw_ptr;
        CheckpointStore store(dir.path);
        try {
            (void)run_pipeline(bundle, plan, gw, registry, store, clock);
            FAIL("expected stage_failed");
        } catch (const Error& e) {
            CHECK(e.code() == "stage_failed");
            CHECK(std::string(e.what()).find("correctness") != std::string::npos);
        }
        CHECK(store.load("run-3").completed.size() == 3);
    }

    // Resume against a fresh scripted backend: stages 1-3 not re-invoked.
    auto fresh = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(fresh); auto& gw = *gw_ptr;
    CheckpointStore store(dir.path);
    auto cp = store.load("run-3");
    auto result = resume_from_checkpoint(cp, bundle, plan, gw, registry, store, clock);
    CHECK(result.records.size() == 8);
    CHECK(result.invoked_stages == 5);
    CHECK(fresh->call_count() == 5);
    CHECK(fresh->observed_requests()[0].tag == "correctness");
}

TEST_CASE("resume with a complete checkpoint invokes nothing") {
    TempDir dir("complete");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;
    auto registry = PromptRegistry::with_defaults();
    auto plan = StagePlan::default_plan("fixture");
    auto bundle = fixtures::tiny_bundle("run-4");
    CheckpointStore store(dir.path);
    FixedStepClock clock;

    (void)run_pipeline(bundle, plan, gw, registry, store, clock);
    const size_t calls_after_run = backend->call_count();

    auto cp = store.load("run-4");
    auto result = resume_from_checkpoint(cp, bundle, plan, gw, registry, store, clock);
    CHECK(result.records.size() == 8);
    CHECK(result.invoked_stages == 0);
    CHECK(backend->call_count() == calls_after_run);
    CHECK(result.review_body == fixtures::kScriptedFinalReview);
}

TEST_CASE("resume rejects a checkpoint from a different plan") {
    TempDir dir("digest");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;
    auto registry = PromptRegistry::with_defaults();
    auto plan = StagePlan::default_plan("fixture");
    auto bundle = fixtures::tiny_bundle("run-5");
    CheckpointStore store(dir.path);
    FixedStepClock clock;

    Checkpoint cp;
    cp.paper_id = "run-5";
    cp.plan_digest = "not-the-right-digest";
    try {
        (void)resume_from_checkpoint(cp, bundle, plan, gw, registry, store, clock);
        FAIL("expected plan_digest_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == "plan_digest_mismatch");
    }
}

TEST_CASE("rollout arithmetic: floor at every scale") {
    CHECK(initial_batch_size(1, 0.30) == 0);
    CHECK(initial_batch_size(10, 0.30) == 3);
    CHECK(initial_batch_size(100, 0.30) == 30);
    CHECK(initial_batch_size(22977, 0.30) == 6893);
    CHECK(initial_batch_size(0, 0.30) == 0);
    CHECK(initial_batch_size(7, 1.0) == 7);
    CHECK(initial_batch_size(7, 0.0) == 0);
}

TEST_CASE("batch: manual gate parks after the initial fraction") {
    TempDir dir("batch1");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script(10));
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;

    std::vector<ingest::PaperBundle> bundles;
    for (int i = 0; i < 10; ++i) bundles.push_back(fixtures::tiny_bundle("b" + std::to_string(i)));

    BatchRun batch(std::move(bundles), StagePlan::default_plan("fixture"), gw,
                   PromptRegistry::with_defaults(), CheckpointStore(dir.path),
                   {0.30, RolloutPolicy::Gate::manual_approval_required}, 2,
                   std::make_shared<FixedStepClock>());
    batch.start();
    CHECK(batch.wait() == BatchState::awaiting_approval);

    auto report = batch.report();
    CHECK(report.processed == 3);
    CHECK(report.failed == 0);
    CHECK(report.pending == 7);
    CHECK(report.processed + report.failed + report.pending == 10);

    batch.approve();
    CHECK(batch.wait() == BatchState::completed);
    report = batch.report();
    CHECK(report.processed == 10);
    CHECK(report.pending == 0);

    SUBCASE("second approve is a wrong-state error") {
        try {
            batch.approve();
            FAIL("expected wrong_state");
        } catch (const Error& e) {
            CHECK(e.code() == "wrong_state");
        }
    }
}

TEST_CASE("batch: auto gate with fraction 1.0 runs in one phase") {
    TempDir dir("batch2");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script(4));
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;

    std::vector<ingest::PaperBundle> bundles;
    for (int i = 0; i < 4; ++i) bundles.push_back(fixtures::tiny_bundle("a" + std::to_string(i)));

    BatchRun batch(std::move(bundles), StagePlan::default_plan("fixture"), gw,
                   PromptRegistry::with_defaults(), CheckpointStore(dir.path),
                   {1.0, RolloutPolicy::Gate::auto_continue}, 3,
                   std::make_shared<FixedStepClock>());
    batch.start();
    CHECK(batch.wait() == BatchState::completed);
    CHECK(batch.report().processed == 4);

    try {
        batch.approve();
        FAIL("expected wrong_state");
    } catch (const Error& e) {
        CHECK(e.code() == "wrong_state");
    }
}

TEST_CASE("batch: a poison paper is recorded as failed, not thrown") {
    TempDir dir("batch3");
    // Two papers, single worker: first paper's story stage fails fatally
    // (entry order per key), second paper completes.
    using gateway::ScriptEntry;
    auto script = fixtures::full_run_script(2);
    script["story"][0] = ScriptEntry::fail_fatal("poison");
    auto backend = std::make_shared<gateway::FixtureBackend>(script);
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;

    std::vector<ingest::PaperBundle> bundles = {fixtures::tiny_bundle("poison"),
                                                fixtures::tiny_bundle("healthy")};
    BatchRun batch(std::move(bundles), StagePlan::default_plan("fixture"), gw,
                   PromptRegistry::with_defaults(), CheckpointStore(dir.path),
                   {1.0, RolloutPolicy::Gate::auto_continue}, 1,
                   std::make_shared<FixedStepClock>());
    batch.start();
    CHECK(batch.wait() == BatchState::completed);
    auto report = batch.report();
    CHECK(report.processed == 1);
    CHECK(report.failed == 1);
    REQUIRE(report.papers.size() == 2);
    CHECK(report.papers[0].state == PaperState::failed);
    CHECK(report.papers[0].error.find("story") != std::string::npos);
    CHECK(report.papers[1].state == PaperState::done);
}

TEST_CASE("a raised cancel flag interrupts between stages, checkpoint kept") {
    TempDir dir("cancel");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script());
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;
    auto registry = PromptRegistry::with_defaults();
    auto plan = StagePlan::default_plan("fixture");
    auto bundle = fixtures::tiny_bundle("cancel-1");
    CheckpointStore store(dir.path);
    FixedStepClock clock;

    std::atomic<bool> cancel{true};  // raised before the first stage
    try {
        (void)run_pipeline(bundle, plan, gw, registry, store, clock, &cancel);
        FAIL("expected interrupted");
    } catch (const Error& e) {
        CHECK(e.code() == "interrupted");
    }
    CHECK(backend->call_count() == 0);

    // Lowering the flag resumes from the checkpoint (nothing completed yet).
    cancel.store(false);
    auto result = run_pipeline(bundle, plan, gw, registry, store, clock, &cancel);
    CHECK(result.records.size() == 8);
}

TEST_CASE("batch conservation holds at every observation point") {
    TempDir dir("conserve");
    auto backend = std::make_shared<gateway::FixtureBackend>(fixtures::full_run_script(16));
    auto gw_ptr = make_gateway(backend); auto& gw = *gw_ptr;

    std::vector<ingest::PaperBundle> bundles;
    for (int i = 0; i < 16; ++i)
        bundles.push_back(fixtures::tiny_bundle("cv" + std::to_string(i)));

    BatchRun batch(std::move(bundles), StagePlan::default_plan("fixture"), gw,
                   PromptRegistry::with_defaults(), CheckpointStore(dir.path),
                   {1.0, RolloutPolicy::Gate::auto_continue}, 4,
                   std::make_shared<FixedStepClock>());
    batch.start();
    // Poll the report from this control thread while workers run.
    for (int i = 0; i < 200; ++i) {
        auto report = batch.report();
        CHECK(report.processed + report.failed + report.pending == 16);
        if (report.pending == 0) break;
        std::this_thread::sleep_for(std::chrono::microseconds(200));
    }
    CHECK(batch.wait() == BatchState::completed);
    auto final_report = batch.report();
    CHECK(final_report.processed == 16);
    CHECK(final_report.processed + final_report.failed + final_report.pending == 16);
}

#include "commands.hpp"

#include <CLI11.hpp>

namespace {

void add_context_flags(CLI::App* cmd, rkcli::ContextOptions& options) {
    cmd->add_option("--config", options.config_path, "JSON config file");
    cmd->add_flag("--mock", options.mock,
                  "offline mode: deterministic scripted backends, no network");
    cmd->add_option("--mock-script", options.mock_script,
                    "fixture backend script (JSON manifest) used with --mock");
    cmd->add_option("--seed", options.seed, "seed for sampling and jitter");
}

} // namespace

int main(int argc, char** argv) {
    rkcli::install_signal_handlers();

    CLI::App app{"staged scientific-review pipeline and perturbation benchmark harness"};
    app.require_subcommand(1);

    // review -----------------------------------------------------------
    auto* review = app.add_subcommand("review", "generate reviews");
    review->require_subcommand(1);

    rkcli::ReviewRunArgs run_args;
    auto* run = review->add_subcommand("run", "review a single paper");
    run->add_option("--paper", run_args.paper, "input PDF")->required();
    run->add_option("--paper-id", run_args.paper_id, "override the paper id");
    run->add_option("--out", run_args.out, "output root (default runs/default)");
    add_context_flags(run, run_args.context);
    run->callback([&] { std::exit(rkcli::cmd_review_run(run_args)); });

    rkcli::ReviewBatchArgs batch_args;
    auto* batch = review->add_subcommand("batch", "review a batch with staged rollout");
    batch->add_option("--manifest", batch_args.manifest, "batch manifest JSON")->required();
    batch->add_option("--out", batch_args.out, "output root (default runs/batch)");
    batch->add_option("--rollout-fraction", batch_args.rollout_fraction,
                      "initial fraction (default 0.30)");
    batch->add_option("--gate", batch_args.gate, "manual|auto (default manual)");
    batch->add_option("--workers", batch_args.workers, "worker threads (ignored with --mock)");
    batch->add_flag("--json", batch_args.json_output, "machine-readable status output");
    add_context_flags(batch, batch_args.context);
    batch->callback([&] { std::exit(rkcli::cmd_review_batch(batch_args)); });

    rkcli::ReviewApproveArgs approve_args;
    auto* approve = review->add_subcommand("approve", "release a gated batch");
    approve->add_option("--manifest", approve_args.manifest, "batch manifest JSON")->required();
    approve->add_option("--out", approve_args.out, "output root of the gated batch");
    approve->add_option("--workers", approve_args.workers, "worker threads");
    approve->add_flag("--json", approve_args.json_output, "machine-readable status output");
    add_context_flags(approve, approve_args.context);
    approve->callback([&] { std::exit(rkcli::cmd_review_approve(approve_args)); });

    // specs ------------------------------------------------------------
    auto* specs = app.add_subcommand("specs", "curate and evaluate the perturbation benchmark");
    specs->require_subcommand(1);

    rkcli::SpecsCurateArgs curate_args;
    auto* curate = specs->add_subcommand("curate", "sample, match and compile-gate papers");
    curate->add_option("--proceedings", curate_args.proceedings, "proceedings JSON")->required();
    curate->add_option("--sources", curate_args.sources, "local source index directory")
        ->required();
    curate->add_option("--out", curate_args.out, "dataset directory (default dataset)");
    curate->add_option("--venue", curate_args.venue, "venue id recorded in the manifest");
    curate->add_option("--total", curate_args.total, "sample size (default: all)");
    curate->add_option("--policy", curate_args.policy, "proportional|uniform");
    curate->add_option("--compile-cmd", curate_args.compile_cmd,
                       "typesetting command (default $SPECS_COMPILE_CMD, then pdflatex)");
    add_context_flags(curate, curate_args.context);
    curate->callback([&] { std::exit(rkcli::cmd_specs_curate(curate_args)); });

    rkcli::SpecsPerturbArgs perturb_args;
    auto* perturb = specs->add_subcommand("perturb", "generate compile-gated perturbations");
    perturb->add_option("--dataset", perturb_args.dataset, "dataset directory");
    perturb->add_option("--criterion", perturb_args.criterion,
                        "story|presentation|evaluations|correctness|significance "
                        "(default: all five)");
    perturb->add_option("--subtype", perturb_args.subtype,
                        "subtype (default: first registered for the criterion)");
    perturb->add_option("--compile-cmd", perturb_args.compile_cmd, "typesetting command");
    add_context_flags(perturb, perturb_args.context);
    perturb->callback([&] { std::exit(rkcli::cmd_specs_perturb(perturb_args)); });

    rkcli::SpecsJudgeArgs judge_args;
    auto* judge = specs->add_subcommand("judge", "run review variants and judge detections");
    judge->add_option("--dataset", judge_args.dataset, "dataset directory");
    judge->add_option("--out", judge_args.out, "evaluation run directory");
    judge->add_option("--variants", judge_args.variants,
                      "comma list: baseline,final,targeted or targeted:<stage>");
    add_context_flags(judge, judge_args.context);
    judge->callback([&] { std::exit(rkcli::cmd_specs_judge(judge_args)); });

    rkcli::SpecsReportArgs report_args;
    auto* report = specs->add_subcommand("report", "recall tables, deltas and the matrix");
    report->add_option("--judgments", report_args.judgments, "evaluation run directory");
    report->add_option("--out", report_args.out, "output directory (default: same)");
    add_context_flags(report, report_args.context);
    report->callback([&] { std::exit(rkcli::cmd_specs_report(report_args)); });

    // survey ------------------------------------------------------------
    auto* survey = app.add_subcommand("survey", "survey response statistics");
    survey->require_subcommand(1);

    rkcli::SurveyAnalyzeArgs survey_args;
    auto* analyze = survey->add_subcommand("analyze", "AI-vs-human comparison report");
    analyze->add_option("responses", survey_args.responses, "responses CSV")->required();
    analyze->add_option("--out", survey_args.out, "output CSV (default survey_report.csv)");
    add_context_flags(analyze, survey_args.context);
    analyze->callback([&] { std::exit(rkcli::cmd_survey_analyze(survey_args)); });

    // qa ----------------------------------------------------------------
    auto* qa = app.add_subcommand("qa", "quality checks over finished reviews");
    qa->require_subcommand(1);

    rkcli::QaRunArgs qa_args;
    auto* qa_run = qa->add_subcommand("run", "critic pass, citation audit, oversight report");
    qa_run->add_option("--reviews", qa_args.reviews, "directory of review .md files")
        ->required();
    qa_run->add_option("--index", qa_args.index, "bibliographic index (JSONL)");
    qa_run->add_option("--out", qa_args.out, "output directory (default qa)");
    add_context_flags(qa_run, qa_args.context);
    qa_run->callback([&] { std::exit(rkcli::cmd_qa_run(qa_args)); });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

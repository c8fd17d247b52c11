#pragma once

#include "common.hpp"

#include <string>

namespace rkcli {

struct ReviewRunArgs {
    ContextOptions context;
    std::string paper;
    std::string paper_id;
    std::string out = "runs/default";
};
int cmd_review_run(const ReviewRunArgs& args);

struct ReviewBatchArgs {
    ContextOptions context;
    std::string manifest;
    std::string out = "runs/batch";
    double rollout_fraction = 0.30;
    std::string gate = "manual";
    int workers = 4;
    bool json_output = false;
};
int cmd_review_batch(const ReviewBatchArgs& args);

struct ReviewApproveArgs {
    ContextOptions context;
    std::string manifest;
    std::string out = "runs/batch";
    int workers = 4;
    bool json_output = false;
};
int cmd_review_approve(const ReviewApproveArgs& args);

struct SpecsCurateArgs {
    ContextOptions context;
    std::string proceedings;
    std::string sources;
    std::string out = "dataset";
    std::string venue;
    size_t total = 0;  // 0 = all eligible
    std::string policy = "proportional";
    std::string compile_cmd;
};
int cmd_specs_curate(const SpecsCurateArgs& args);

struct SpecsPerturbArgs {
    ContextOptions context;
    std::string dataset = "dataset";
    std::string criterion;  // empty = all five
    std::string subtype;    // empty = first registered for the criterion
    std::string compile_cmd;
};
int cmd_specs_perturb(const SpecsPerturbArgs& args);

struct SpecsJudgeArgs {
    ContextOptions context;
    std::string dataset = "dataset";
    std::string out = "eval/run1";
    std::string variants = "baseline,final";  // comma list; "targeted" = all five
};
int cmd_specs_judge(const SpecsJudgeArgs& args);

struct SpecsReportArgs {
    ContextOptions context;
    std::string judgments = "eval/run1";
    std::string out;  // default: same as judgments dir
};
int cmd_specs_report(const SpecsReportArgs& args);

struct SurveyAnalyzeArgs {
    ContextOptions context;
    std::string responses;
    std::string out = "survey_report.csv";
};
int cmd_survey_analyze(const SurveyAnalyzeArgs& args);

struct QaRunArgs {
    ContextOptions context;
    std::string reviews;
    std::string index;  // bibliographic JSONL; optional
    std::string out = "qa";
};
int cmd_qa_run(const QaRunArgs& args);

} // namespace rkcli

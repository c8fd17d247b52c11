#pragma once

#include "reviewkit/eval/compare.hpp"

namespace reviewkit::eval {

// Benchmark results over one judged run: recall per criterion and
// variant, plus targeted-vs-baseline and final-vs-baseline comparisons.
// "targeted" means the criterion-matched stage (the matrix diagonal).
struct BenchmarkReport {
    RecallTable recall;
    std::vector<VariantComparison> targeted_vs_baseline;
    std::vector<VariantComparison> final_vs_baseline;

    // criterion,n,baseline,targeted,final,delta_tb,p_tb,delta_fb,p_fb
    std::string to_csv() const;
    std::string to_json() const;
};

// Expects judgments for the baseline and final variants over every
// perturbation, and targeted judgments at least for each perturbation's
// own criterion stage.
BenchmarkReport build_benchmark_report(const std::vector<Judgment>& judgments,
                                       const std::map<std::string, std::string>& criterion_of);

} // namespace reviewkit::eval

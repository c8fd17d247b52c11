#pragma once

#include "reviewkit/eval/mcnemar.hpp"
#include "reviewkit/eval/rates.hpp"

namespace reviewkit::eval {

struct VariantComparison {
    std::string criterion;  // "all" for the overall row
    size_t n = 0;
    double recall_a = 0.0;
    double recall_b = 0.0;
    double delta = 0.0;  // recall_b - recall_a
    McNemarResult mcnemar;
};

// Pairs judgments by perturbation id (Error("mismatched_sets") when the
// id sets differ), then reports delta recall and the exact McNemar test
// per criterion plus the overall row.
std::vector<VariantComparison> compare_variants(
    const std::vector<Judgment>& a, const std::vector<Judgment>& b,
    const std::map<std::string, std::string>& criterion_of);

} // namespace reviewkit::eval

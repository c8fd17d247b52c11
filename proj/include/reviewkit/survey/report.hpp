#pragma once

#include "reviewkit/survey/likert.hpp"
#include "reviewkit/survey/mann_whitney.hpp"

#include <string>
#include <vector>

namespace reviewkit::survey {

struct ComparisonResult {
    std::string item_id;
    size_t n_ai = 0;
    size_t n_human = 0;
    Rational mean_ai;
    Rational mean_human;
    Rational delta;  // mean_ai - mean_human
    double u_statistic = 0.0;
    double p_value = 1.0;
};

// One AI/human pair of response collections per item.
struct ItemResponses {
    std::string item_id;
    ResponseSet ai;
    ResponseSet human;
};

// One result per item, in input order. Error("item_mismatch") if a pair's
// collections disagree on the item id.
std::vector<ComparisonResult> comparison_report(const std::vector<ItemResponses>& items);

// Parses response CSV with header (role,review_type,item_id,value) and
// groups rows into per-item AI/human collections pooled across roles,
// ordered by first appearance of the item. Error("csv_row", ...) names the
// 1-based row of the first malformed entry.
std::vector<ItemResponses> load_responses_csv(const std::string& text);

// CSV rows: item_id,n_ai,n_human,mean_ai,mean_human,delta,u,p.
std::string render_comparison_csv(const std::vector<ComparisonResult>& results);

} // namespace reviewkit::survey

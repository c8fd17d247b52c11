#include "reviewkit/survey/report.hpp"

#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/error.hpp"
#include "reviewkit/util/strings.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace reviewkit::survey {

std::vector<ComparisonResult> comparison_report(const std::vector<ItemResponses>& items) {
    std::vector<ComparisonResult> results;
    results.reserve(items.size());
    for (const auto& item : items) {
        if (item.ai.item_id != item.item_id || item.human.item_id != item.item_id) {
            throw Error("item_mismatch", "responses for item '" + item.item_id +
                                             "' carry a different item id");
        }
        ComparisonResult r;
        r.item_id = item.item_id;
        r.n_ai = item.ai.values.size();
        r.n_human = item.human.values.size();
        r.mean_ai = mean(item.ai);
        r.mean_human = mean(item.human);
        r.delta = diff_means(item.ai, item.human);
        auto mw = mann_whitney_u(item.ai.values, item.human.values);
        r.u_statistic = mw.u;
        r.p_value = mw.p_two_sided;
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<ItemResponses> load_responses_csv(const std::string& text) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw Error("csv_row", "row 1: empty responses file");

    size_t start = 0;
    // Optional header row.
    if (!rows[0].empty() && strings::to_lower(rows[0][0]) == "role") start = 1;

    std::vector<std::string> item_order;
    std::map<std::string, ItemResponses> by_item;

    for (size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string rownum = std::to_string(i + 1);
        if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
        if (row.size() != 4) {
            throw Error("csv_row", "row " + rownum + ": expected 4 columns, got " +
                                       std::to_string(row.size()));
        }
        auto role = parse_role(row[0]);
        if (!role) throw Error("csv_row", "row " + rownum + ": unknown role '" + row[0] + "'");
        auto type = parse_review_type(row[1]);
        if (!type) {
            throw Error("csv_row", "row " + rownum + ": unknown review type '" + row[1] + "'");
        }
        const std::string item_id = strings::trim(row[2]);
        if (item_id.empty()) throw Error("csv_row", "row " + rownum + ": empty item_id");

        const std::string value_str = strings::trim(row[3]);
        int value = 0;
        auto [ptr, ec] = std::from_chars(value_str.data(),
                                         value_str.data() + value_str.size(), value);
        if (ec != std::errc() || ptr != value_str.data() + value_str.size() ||
            value < kLikertMin || value > kLikertMax) {
            throw Error("csv_row", "row " + rownum + ": value '" + row[3] +
                                       "' is not a likert response in [-2,2]");
        }

        auto it = by_item.find(item_id);
        if (it == by_item.end()) {
            ItemResponses fresh;
            fresh.item_id = item_id;
            fresh.ai.item_id = item_id;
            fresh.ai.review_type = ReviewType::ai;
            fresh.human.item_id = item_id;
            fresh.human.review_type = ReviewType::human;
            it = by_item.emplace(item_id, std::move(fresh)).first;
            item_order.push_back(item_id);
        }
        if (*type == ReviewType::ai) {
            it->second.ai.values.push_back(value);
        } else {
            it->second.human.values.push_back(value);
        }
    }

    std::vector<ItemResponses> out;
    out.reserve(item_order.size());
    for (const auto& id : item_order) out.push_back(std::move(by_item.at(id)));
    return out;
}

std::string render_comparison_csv(const std::vector<ComparisonResult>& results) {
    std::ostringstream out;
    csv::write_row(out, {"item_id", "n_ai", "n_human", "mean_ai", "mean_human", "delta",
                         "u_statistic", "p_value"});
    for (const auto& r : results) {
        csv::write_row(out, {r.item_id, std::to_string(r.n_ai), std::to_string(r.n_human),
                             r.mean_ai.to_decimal(4), r.mean_human.to_decimal(4),
                             r.delta.to_decimal(4), strings::format_decimal(r.u_statistic, 1),
                             strings::format_decimal(r.p_value, 6)});
    }
    return out.str();
}

} // namespace reviewkit::survey

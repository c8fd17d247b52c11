#include "reviewkit/eval/report.hpp"

#include "reviewkit/curation/types.hpp"
#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace reviewkit::eval {

using nlohmann::json;

namespace {

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", p);
    return buf;
}

} // namespace

BenchmarkReport build_benchmark_report(const std::vector<Judgment>& judgments,
                                       const std::map<std::string, std::string>& criterion_of) {
    BenchmarkReport report;
    report.recall = detection_rates(judgments, criterion_of);

    std::vector<Judgment> baseline, final_set, targeted_matched;
    for (const auto& j : judgments) {
        if (j.variant == "baseline") {
            baseline.push_back(j);
        } else if (j.variant == "final") {
            final_set.push_back(j);
        } else if (j.variant.rfind("targeted:", 0) == 0) {
            auto it = criterion_of.find(j.perturbation_id);
            if (it != criterion_of.end() && j.variant.substr(9) == it->second) {
                targeted_matched.push_back(j);
            }
        }
    }
    if (!baseline.empty() && !targeted_matched.empty()) {
        report.targeted_vs_baseline = compare_variants(baseline, targeted_matched,
                                                       criterion_of);
    }
    if (!baseline.empty() && !final_set.empty()) {
        report.final_vs_baseline = compare_variants(baseline, final_set, criterion_of);
    }
    return report;
}

namespace {

struct Row {
    std::string criterion;
    size_t n = 0;
    double baseline = 0, targeted = 0, final_rate = 0;
    double delta_tb = 0, p_tb = 1, delta_fb = 0, p_fb = 1;
    bool has_targeted = false, has_final = false;
};

std::vector<Row> assemble_rows(const BenchmarkReport& report) {
    std::vector<Row> rows;
    auto find_comparison = [](const std::vector<VariantComparison>& list,
                              const std::string& criterion) -> const VariantComparison* {
        for (const auto& c : list) {
            if (c.criterion == criterion) return &c;
        }
        return nullptr;
    };

    std::vector<std::string> order(curation::kCriteria.begin(), curation::kCriteria.end());
    order.emplace_back("all");
    for (const auto& criterion : order) {
        if (!report.recall.cells.count(criterion)) continue;
        Row row;
        row.criterion = criterion;
        if (const auto* tb = find_comparison(report.targeted_vs_baseline, criterion)) {
            row.n = tb->n;
            row.baseline = tb->recall_a;
            row.targeted = tb->recall_b;
            row.delta_tb = tb->delta;
            row.p_tb = tb->mcnemar.p_value;
            row.has_targeted = true;
        }
        if (const auto* fb = find_comparison(report.final_vs_baseline, criterion)) {
            row.n = fb->n;
            row.baseline = fb->recall_a;
            row.final_rate = fb->recall_b;
            row.delta_fb = fb->delta;
            row.p_fb = fb->mcnemar.p_value;
            row.has_final = true;
        }
        if (row.n == 0) {
            const auto& variants = report.recall.cells.at(criterion);
            if (auto it = variants.find("baseline"); it != variants.end()) {
                row.n = it->second.n;
                row.baseline = it->second.rate();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string BenchmarkReport::to_csv() const {
    std::ostringstream out;
    csv::write_row(out, {"criterion", "n", "baseline", "targeted", "final", "delta_tb", "p_tb",
                         "delta_fb", "p_fb"});
    for (const auto& row : assemble_rows(*this)) {
        csv::write_row(
            out, {row.criterion, std::to_string(row.n),
                  strings::format_decimal(row.baseline, 4),
                  row.has_targeted ? strings::format_decimal(row.targeted, 4) : "",
                  row.has_final ? strings::format_decimal(row.final_rate, 4) : "",
                  row.has_targeted ? strings::format_decimal(row.delta_tb, 4) : "",
                  row.has_targeted ? format_p(row.p_tb) : "",
                  row.has_final ? strings::format_decimal(row.delta_fb, 4) : "",
                  row.has_final ? format_p(row.p_fb) : ""});
    }
    return out.str();
}

std::string BenchmarkReport::to_json() const {
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : assemble_rows(*this)) {
        json r;
        r["criterion"] = row.criterion;
        r["n"] = row.n;
        r["baseline"] = row.baseline;
        if (row.has_targeted) {
            r["targeted"] = row.targeted;
            r["delta_tb"] = row.delta_tb;
            r["p_tb"] = row.p_tb;
        }
        if (row.has_final) {
            r["final"] = row.final_rate;
            r["delta_fb"] = row.delta_fb;
            r["p_fb"] = row.p_fb;
        }
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

} // namespace reviewkit::eval

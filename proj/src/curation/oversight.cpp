#include "reviewkit/curation/oversight.hpp"

#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace reviewkit::curation {

ConsensusTable record_oversight(const std::vector<OversightVerdict>& verdicts,
                                const std::map<std::string, std::string>& criterion_of) {
    struct PerPert {
        std::map<std::string, bool> by_reviewer;
    };
    std::map<std::string, PerPert> per_pert;
    std::set<std::string> reviewers;

    for (const auto& v : verdicts) {
        auto& slot = per_pert[v.perturbation_id];
        auto [it, inserted] = slot.by_reviewer.emplace(v.reviewer_id, v.valid);
        (void)it;
        if (!inserted) {
            throw Error("duplicate_verdict", "reviewer '" + v.reviewer_id +
                                                 "' has two verdicts for perturbation '" +
                                                 v.perturbation_id + "'");
        }
        reviewers.insert(v.reviewer_id);
    }

    for (const auto& [pert_id, slot] : per_pert) {
        if (slot.by_reviewer.size() < 2) {
            throw Error("insufficient_verdicts",
                        "perturbation '" + pert_id + "' has " +
                            std::to_string(slot.by_reviewer.size()) +
                            " verdict(s); at least two reviewers required");
        }
        if (!criterion_of.count(pert_id)) {
            throw Error("invalid_argument",
                        "no criterion known for perturbation '" + pert_id + "'");
        }
    }

    ConsensusTable table;
    table.total.criterion = "all";
    for (const char* criterion : kCriteria) {
        ConsensusRow row;
        row.criterion = criterion;
        for (const auto& r : reviewers) row.per_reviewer[r] = 0;
        table.rows.push_back(row);
    }
    for (const auto& r : reviewers) table.total.per_reviewer[r] = 0;

    auto row_for = [&](const std::string& criterion) -> ConsensusRow& {
        for (auto& row : table.rows) {
            if (row.criterion == criterion) return row;
        }
        throw Error("invalid_argument", "criterion '" + criterion + "' is not one of the five");
    };

    for (const auto& [pert_id, slot] : per_pert) {
        ConsensusRow& row = row_for(criterion_of.at(pert_id));
        ++row.n;
        ++table.total.n;
        bool all_valid = true;
        for (const auto& [reviewer, valid] : slot.by_reviewer) {
            if (valid) {
                ++row.per_reviewer[reviewer];
                ++table.total.per_reviewer[reviewer];
            } else {
                all_valid = false;
            }
        }
        if (all_valid) {
            ++row.consensus;
            ++table.total.consensus;
        }
    }
    return table;
}

std::string ConsensusTable::to_csv() const {
    std::ostringstream out;
    std::vector<std::string> header = {"criterion", "n"};
    for (const auto& [reviewer, count] : total.per_reviewer) {
        (void)count;
        header.push_back(reviewer);
    }
    header.push_back("consensus");
    csv::write_row(out, header);

    auto emit = [&](const ConsensusRow& row) {
        std::vector<std::string> fields = {row.criterion, std::to_string(row.n)};
        for (const auto& [reviewer, count] : total.per_reviewer) {
            auto it = row.per_reviewer.find(reviewer);
            fields.push_back(std::to_string(it == row.per_reviewer.end() ? 0 : it->second));
            (void)count;
        }
        fields.push_back(std::to_string(row.consensus));
        csv::write_row(out, fields);
    };
    for (const auto& row : rows) emit(row);
    emit(total);
    return out.str();
}

} // namespace reviewkit::curation

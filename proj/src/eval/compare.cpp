#include "reviewkit/eval/compare.hpp"

#include "reviewkit/curation/types.hpp"

#include <set>

namespace reviewkit::eval {

std::vector<VariantComparison> compare_variants(
    const std::vector<Judgment>& a, const std::vector<Judgment>& b,
    const std::map<std::string, std::string>& criterion_of) {
    std::map<std::string, bool> caught_a, caught_b;
    for (const auto& j : a) {
        if (!caught_a.emplace(j.perturbation_id, j.caught).second) {
            throw Error("duplicate_judgment",
                        "perturbation '" + j.perturbation_id + "' judged twice in set A");
        }
    }
    for (const auto& j : b) {
        if (!caught_b.emplace(j.perturbation_id, j.caught).second) {
            throw Error("duplicate_judgment",
                        "perturbation '" + j.perturbation_id + "' judged twice in set B");
        }
    }
    if (caught_a.size() != caught_b.size()) {
        throw Error("mismatched_sets", "variant A judged " + std::to_string(caught_a.size()) +
                                           " perturbations, variant B " +
                                           std::to_string(caught_b.size()));
    }
    for (const auto& [id, caught] : caught_a) {
        (void)caught;
        if (!caught_b.count(id)) {
            throw Error("mismatched_sets", "perturbation '" + id + "' only judged in set A");
        }
    }

    struct Tally {
        size_t n = 0, ca = 0, cb = 0, b_disc = 0, c_disc = 0;
    };
    std::map<std::string, Tally> tallies;
    Tally overall;
    for (const auto& [id, was_caught_a] : caught_a) {
        auto crit = criterion_of.find(id);
        if (crit == criterion_of.end()) {
            throw Error("invalid_argument", "no criterion for perturbation '" + id + "'");
        }
        const bool was_caught_b = caught_b.at(id);
        auto bump = [&](Tally& t) {
            ++t.n;
            if (was_caught_a) ++t.ca;
            if (was_caught_b) ++t.cb;
            if (was_caught_a && !was_caught_b) ++t.b_disc;
            if (!was_caught_a && was_caught_b) ++t.c_disc;
        };
        bump(tallies[crit->second]);
        bump(overall);
    }

    std::vector<VariantComparison> out;
    auto emit = [&](const std::string& criterion, const Tally& t) {
        VariantComparison c;
        c.criterion = criterion;
        c.n = t.n;
        c.recall_a = t.n ? static_cast<double>(t.ca) / t.n : 0.0;
        c.recall_b = t.n ? static_cast<double>(t.cb) / t.n : 0.0;
        c.delta = c.recall_b - c.recall_a;
        c.mcnemar = mcnemar_from_counts(t.b_disc, t.c_disc);
        out.push_back(std::move(c));
    };
    for (const char* criterion : curation::kCriteria) {
        if (tallies.count(criterion)) emit(criterion, tallies.at(criterion));
    }
    emit("all", overall);
    return out;
}

} // namespace reviewkit::eval

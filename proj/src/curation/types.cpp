#include "reviewkit/curation/types.hpp"

#include "reviewkit/util/error.hpp"

#include <algorithm>

namespace reviewkit::curation {

bool is_criterion(const std::string& name) {
    return std::find(kCriteria.begin(), kCriteria.end(), name) != kCriteria.end();
}

SubtypeRegistry SubtypeRegistry::with_defaults() {
    SubtypeRegistry registry;
    registry.register_subtype("evaluations", "missing_baseline");
    registry.register_subtype("evaluations", "missing_metric");
    registry.register_subtype("evaluations", "data_misinterpretation");
    registry.register_subtype("correctness", "broken_derivation");
    registry.register_subtype("correctness", "wrong_constant");
    registry.register_subtype("presentation", "mislabeled_figure");
    registry.register_subtype("presentation", "inconsistent_terminology");
    registry.register_subtype("story", "overclaimed_contribution");
    registry.register_subtype("significance", "omitted_related_work");
    return registry;
}

void SubtypeRegistry::register_subtype(const std::string& criterion,
                                       const std::string& subtype) {
    if (!is_criterion(criterion)) {
        throw Error("invalid_argument", "unknown criterion '" + criterion + "'");
    }
    auto& list = by_criterion_[criterion];
    if (std::find(list.begin(), list.end(), subtype) == list.end()) {
        list.push_back(subtype);
    }
}

bool SubtypeRegistry::contains(const std::string& criterion, const std::string& subtype) const {
    auto it = by_criterion_.find(criterion);
    if (it == by_criterion_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), subtype) != it->second.end();
}

std::vector<std::string> SubtypeRegistry::subtypes(const std::string& criterion) const {
    auto it = by_criterion_.find(criterion);
    return it == by_criterion_.end() ? std::vector<std::string>{} : it->second;
}

} // namespace reviewkit::curation

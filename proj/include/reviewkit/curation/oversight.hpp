#pragma once

#include "reviewkit/curation/types.hpp"

namespace reviewkit::curation {

struct ConsensusRow {
    std::string criterion;  // "all" for the totals row
    size_t n = 0;
    std::map<std::string, size_t> per_reviewer;  // reviewer id -> valid count
    size_t consensus = 0;                        // all reviewers marked valid
};

struct ConsensusTable {
    std::vector<ConsensusRow> rows;  // per criterion, criterion order
    ConsensusRow total;

    std::string to_csv() const;
};

// Requires >= 2 distinct reviewers per perturbation
// (Error("insufficient_verdicts") naming the perturbation) and one
// verdict per (perturbation, reviewer) (Error("duplicate_verdict")).
// `criterion_of` maps perturbation ids to their criterion.
ConsensusTable record_oversight(const std::vector<OversightVerdict>& verdicts,
                                const std::map<std::string, std::string>& criterion_of);

} // namespace reviewkit::curation

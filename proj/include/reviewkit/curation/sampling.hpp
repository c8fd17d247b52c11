#pragma once

#include "reviewkit/curation/types.hpp"

#include <cstdint>

namespace reviewkit::curation {

struct QuotaPolicy {
    enum class Kind {
        uniform,       // equal share per category, remainder to the
                       // alphabetically first categories
        proportional,  // largest-remainder allocation by category size
    };
    Kind kind = Kind::proportional;
    size_t total = 0;
};

// Deterministic for a fixed seed. Output is grouped by category name
// (ascending), sample order within a category fixed by the seeded
// shuffle. Error("empty_category") when a category's quota exceeds its
// population (or when a uniform share hits an empty category).
std::vector<ProceedingsEntry> sample_candidates(const std::vector<ProceedingsEntry>& proceedings,
                                                const QuotaPolicy& quota, uint64_t seed);

// The allocation itself, exposed for tests: category -> sample count.
std::map<std::string, size_t> quota_allocation(const std::vector<ProceedingsEntry>& proceedings,
                                               const QuotaPolicy& quota);

} // namespace reviewkit::curation

#pragma once

#include <cstddef>
#include <vector>

namespace reviewkit::survey {

enum class MwMethod {
    automatic,  // exact when n1 + n2 <= kExactCutoff, else normal approx
    exact,
    normal_approx,
};

// Pooled samples of this size or smaller take the exact enumeration path.
constexpr size_t kMwExactCutoff = 14;

struct MannWhitneyResult {
    double u = 0.0;  // U statistic of the first sample, midrank tie handling
    double p_two_sided = 1.0;
    bool exact = false;
};

// Two-sided Mann-Whitney U. Ties get midranks. The exact path enumerates
// every label assignment of the pooled multiset (conditioning on the tied
// data) and counts assignments at least as far from n1*n2/2 as observed.
// The approximate path uses the tie-corrected normal approximation with
// a 0.5 continuity correction.
MannWhitneyResult mann_whitney_u(const std::vector<int>& a, const std::vector<int>& b,
                                 MwMethod method = MwMethod::automatic);

} // namespace reviewkit::survey

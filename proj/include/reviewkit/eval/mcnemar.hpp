#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace reviewkit::eval {

// Paired detection outcome for one perturbation under two review variants.
struct PairedOutcome {
    std::string perturbation_id;
    bool a_caught = false;
    bool b_caught = false;
};

struct McNemarResult {
    size_t b = 0;  // A caught, B missed
    size_t c = 0;  // A missed, B caught
    double p_value = 1.0;
};

// Two-sided exact McNemar over the discordant pairs:
//   p = min(1, 2 * sum_{k >= max(b,c)} C(b+c, k) / 2^(b+c)),  p = 1 when b = c = 0.
McNemarResult mcnemar_exact(const std::vector<PairedOutcome>& pairs);
McNemarResult mcnemar_from_counts(size_t b, size_t c);

} // namespace reviewkit::eval

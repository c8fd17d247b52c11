#include "reviewkit/eval/mcnemar.hpp"

#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <cmath>

namespace reviewkit::eval {

namespace {

// Upper-tail binomial sum P(X >= k0) for X ~ Bin(n, 1/2). Exact integer
// path while C(n, .) fits in uint64 (n <= 62); log-space beyond that.
double binom_upper_tail(size_t n, size_t k0) {
    if (k0 == 0) return 1.0;
    if (k0 > n) return 0.0;
    if (n <= 62) {
        // Row of Pascal's triangle via the multiplicative recurrence.
        long double sum = 0.0L;
        uint64_t coeff = 1;  // C(n, 0)
        for (size_t k = 0; k <= n; ++k) {
            if (k >= k0) sum += static_cast<long double>(coeff);
            if (k < n) coeff = coeff * (n - k) / (k + 1);
        }
        return static_cast<double>(sum / std::pow(2.0L, static_cast<long double>(n)));
    }
    long double sum = 0.0L;
    const long double log2n = static_cast<long double>(n) * std::log(2.0L);
    for (size_t k = k0; k <= n; ++k) {
        long double log_c = std::lgamma(static_cast<long double>(n) + 1) -
                            std::lgamma(static_cast<long double>(k) + 1) -
                            std::lgamma(static_cast<long double>(n - k) + 1);
        sum += std::exp(log_c - log2n);
    }
    return static_cast<double>(std::min(sum, 1.0L));
}

} // namespace

McNemarResult mcnemar_from_counts(size_t b, size_t c) {
    McNemarResult result;
    result.b = b;
    result.c = c;
    const size_t n = b + c;
    if (n == 0) {
        result.p_value = 1.0;
        return result;
    }
    result.p_value = std::min(1.0, 2.0 * binom_upper_tail(n, std::max(b, c)));
    return result;
}

McNemarResult mcnemar_exact(const std::vector<PairedOutcome>& pairs) {
    if (pairs.empty()) {
        throw Error("empty_collection", "mcnemar over zero pairs");
    }
    size_t b = 0, c = 0;
    for (const auto& p : pairs) {
        if (p.a_caught && !p.b_caught) ++b;
        if (!p.a_caught && p.b_caught) ++c;
    }
    return mcnemar_from_counts(b, c);
}

} // namespace reviewkit::eval

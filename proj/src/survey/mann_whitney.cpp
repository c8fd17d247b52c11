#include "reviewkit/survey/mann_whitney.hpp"

#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace reviewkit::survey {

namespace {

// Midranks of the pooled sample, 1-based.
std::vector<double> midranks(const std::vector<int>& pooled) {
    const size_t n = pooled.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return pooled[i] < pooled[j]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

double u_from_rank_sum(double rank_sum, size_t n1) {
    return rank_sum - static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double exact_p(const std::vector<double>& ranks, size_t n1, double u_obs) {
    const size_t n = ranks.size();
    const double mu = static_cast<double>(n1) * static_cast<double>(n - n1) / 2.0;
    const double dev = std::abs(u_obs - mu);

    // Iterate all C(n, n1) index subsets assigned to the first sample.
    std::vector<size_t> idx(n1);
    std::iota(idx.begin(), idx.end(), 0);
    uint64_t total = 0;
    uint64_t at_least = 0;
    while (true) {
        double rank_sum = 0;
        for (size_t k : idx) rank_sum += ranks[k];
        double u = u_from_rank_sum(rank_sum, n1);
        ++total;
        if (std::abs(u - mu) >= dev - 1e-9) ++at_least;

        // next combination
        size_t i = n1;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - n1) {
                ++idx[i];
                for (size_t j = i + 1; j < n1; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return static_cast<double>(at_least) / static_cast<double>(total);
        }
    }
}

double approx_p(const std::vector<int>& pooled, size_t n1, double u_obs) {
    const size_t n = pooled.size();
    const size_t n2 = n - n1;
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    std::map<int, size_t> tie_counts;
    for (int v : pooled) ++tie_counts[v];
    double tie_term = 0.0;
    for (const auto& [value, t] : tie_counts) {
        (void)value;
        double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                       ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (var <= 0.0) return 1.0;  // every pooled value identical

    double z = (std::abs(u_obs - mu) - 0.5) / std::sqrt(var);
    if (z < 0.0) z = 0.0;
    double p = 2.0 * normal_sf(z);
    return std::min(1.0, p);
}

} // namespace

MannWhitneyResult mann_whitney_u(const std::vector<int>& a, const std::vector<int>& b,
                                 MwMethod method) {
    if (a.empty() || b.empty()) {
        throw Error("empty_collection", "mann-whitney requires two non-empty samples");
    }
    std::vector<int> pooled;
    pooled.reserve(a.size() + b.size());
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());

    const std::vector<double> ranks = midranks(pooled);
    double rank_sum_a = 0;
    for (size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
    const double u = u_from_rank_sum(rank_sum_a, a.size());

    MannWhitneyResult result;
    result.u = u;
    bool use_exact = method == MwMethod::exact ||
                     (method == MwMethod::automatic && pooled.size() <= kMwExactCutoff);
    if (use_exact) {
        result.exact = true;
        result.p_two_sided = exact_p(ranks, a.size(), u);
    } else {
        result.exact = false;
        result.p_two_sided = approx_p(pooled, a.size(), u);
    }
    return result;
}

} // namespace reviewkit::survey

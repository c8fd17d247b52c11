#include "reviewkit/curation/sampling.hpp"

#include "reviewkit/util/digest.hpp"
#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <random>

namespace reviewkit::curation {

namespace {

std::map<std::string, std::vector<ProceedingsEntry>> group_by_track(
    const std::vector<ProceedingsEntry>& proceedings) {
    std::map<std::string, std::vector<ProceedingsEntry>> groups;
    for (const auto& entry : proceedings) groups[entry.track].push_back(entry);
    return groups;
}

} // namespace

std::map<std::string, size_t> quota_allocation(const std::vector<ProceedingsEntry>& proceedings,
                                               const QuotaPolicy& quota) {
    if (proceedings.empty()) {
        throw Error("invalid_argument", "proceedings list is empty");
    }
    auto groups = group_by_track(proceedings);
    std::map<std::string, size_t> allocation;

    if (quota.kind == QuotaPolicy::Kind::uniform) {
        const size_t k = groups.size();
        size_t share = quota.total / k;
        size_t remainder = quota.total % k;
        for (const auto& [track, entries] : groups) {
            (void)entries;
            allocation[track] = share + (remainder > 0 ? 1 : 0);
            if (remainder > 0) --remainder;
        }
    } else {
        const double n = static_cast<double>(proceedings.size());
        // Largest-remainder (Hamilton) apportionment.
        std::vector<std::pair<std::string, double>> fractional;
        size_t assigned = 0;
        for (const auto& [track, entries] : groups) {
            double exact = static_cast<double>(quota.total) * entries.size() / n;
            size_t floor_share = static_cast<size_t>(exact);
            allocation[track] = floor_share;
            assigned += floor_share;
            fractional.emplace_back(track, exact - static_cast<double>(floor_share));
        }
        std::sort(fractional.begin(), fractional.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;  // deterministic tie-break
        });
        for (size_t i = 0; assigned < quota.total && i < fractional.size(); ++i, ++assigned) {
            ++allocation[fractional[i].first];
        }
    }

    for (const auto& [track, want] : allocation) {
        const size_t have = groups[track].size();
        if (want > have) {
            throw Error("empty_category", "track '" + track + "' has " + std::to_string(have) +
                                              " papers but the quota needs " +
                                              std::to_string(want));
        }
    }
    return allocation;
}

std::vector<ProceedingsEntry> sample_candidates(const std::vector<ProceedingsEntry>& proceedings,
                                                const QuotaPolicy& quota, uint64_t seed) {
    auto allocation = quota_allocation(proceedings, quota);
    auto groups = group_by_track(proceedings);

    std::vector<ProceedingsEntry> sample;
    sample.reserve(quota.total);
    for (auto& [track, entries] : groups) {
        // Stable base order, then a per-track seeded shuffle.
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.id < b.id; });
        const std::string track_digest = digest::sha256_hex(track);
        uint64_t track_salt = 0;
        for (size_t i = 0; i < 16 && i < track_digest.size(); ++i) {
            track_salt = track_salt * 16 +
                         static_cast<uint64_t>(
                             track_digest[i] <= '9' ? track_digest[i] - '0'
                                                    : track_digest[i] - 'a' + 10);
        }
        std::mt19937_64 rng(seed ^ track_salt);
        std::shuffle(entries.begin(), entries.end(), rng);
        const size_t take = allocation[track];
        for (size_t i = 0; i < take; ++i) sample.push_back(entries[i]);
    }
    return sample;
}

} // namespace reviewkit::curation

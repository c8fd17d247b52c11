#include "reviewkit/survey/likert.hpp"

#include "reviewkit/util/error.hpp"
#include "reviewkit/util/strings.hpp"

namespace reviewkit::survey {

const char* to_string(Role r) {
    switch (r) {
    case Role::author: return "author";
    case Role::pc: return "PC";
    case Role::spc: return "SPC";
    case Role::ac: return "AC";
    }
    return "?";
}

const char* to_string(ReviewType t) {
    return t == ReviewType::ai ? "AI" : "human";
}

std::optional<Role> parse_role(std::string_view s) {
    std::string k = strings::to_lower(strings::trim(s));
    if (k == "author" || k == "authors") return Role::author;
    if (k == "pc") return Role::pc;
    if (k == "spc") return Role::spc;
    if (k == "ac") return Role::ac;
    return std::nullopt;
}

std::optional<ReviewType> parse_review_type(std::string_view s) {
    std::string k = strings::to_lower(strings::trim(s));
    if (k == "ai") return ReviewType::ai;
    if (k == "human") return ReviewType::human;
    return std::nullopt;
}

void validate(const ResponseSet& r) {
    for (int v : r.values) {
        if (v < kLikertMin || v > kLikertMax) {
            throw Error("invalid_value",
                        "likert value " + std::to_string(v) + " out of range for item " +
                            r.item_id);
        }
    }
}

Rational mean(const ResponseSet& r) {
    if (r.values.empty()) {
        throw Error("empty_collection", "mean of empty response collection");
    }
    int64_t sum = 0;
    for (int v : r.values) sum += v;
    return Rational(sum, static_cast<int64_t>(r.values.size()));
}

Rational pooled_mean(const std::vector<ResponseSet>& groups) {
    if (groups.empty()) {
        throw Error("empty_collection", "pooled mean of zero groups");
    }
    Rational weighted{0};
    int64_t total = 0;
    for (const auto& g : groups) {
        if (g.values.empty()) {
            throw Error("empty_collection", "pooled mean over an empty group");
        }
        auto n = static_cast<int64_t>(g.values.size());
        weighted = weighted + Rational(n) * mean(g);
        total += n;
    }
    return weighted / Rational(total);
}

Rational diff_means(const ResponseSet& ai, const ResponseSet& human) {
    if (ai.item_id != human.item_id) {
        throw Error("item_mismatch",
                    "cannot compare items '" + ai.item_id + "' and '" + human.item_id + "'");
    }
    return mean(ai) - mean(human);
}

AgreementFractions agreement_fractions(const ResponseSet& r) {
    if (r.values.empty()) {
        throw Error("empty_collection", "agreement fractions of empty collection");
    }
    int64_t agree = 0, disagree = 0, neutral = 0;
    for (int v : r.values) {
        if (v >= 1) ++agree;
        else if (v <= -1) ++disagree;
        else ++neutral;
    }
    auto n = static_cast<int64_t>(r.values.size());
    return {Rational(agree, n), Rational(disagree, n), Rational(neutral, n)};
}

} // namespace reviewkit::survey

#pragma once

#include "reviewkit/util/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reviewkit::survey {

enum class Role { author, pc, spc, ac };
enum class ReviewType { ai, human };

const char* to_string(Role r);
const char* to_string(ReviewType t);
std::optional<Role> parse_role(std::string_view s);
std::optional<ReviewType> parse_review_type(std::string_view s);

constexpr int kLikertMin = -2;
constexpr int kLikertMax = 2;

// One collection of five-point Likert responses (-2 strongly disagree
// ... +2 strongly agree) for a single questionnaire item.
struct ResponseSet {
    Role role = Role::author;
    ReviewType review_type = ReviewType::ai;
    std::string item_id;
    std::vector<int> values;
};

// Throws Error("invalid_value") if any value is outside the scale.
void validate(const ResponseSet& r);

// Arithmetic mean as an exact rational. Error("empty_collection") on |R| = 0.
Rational mean(const ResponseSet& r);

// Size-weighted pooling: (sum |Ri| * M(Ri)) / (sum |Ri|). Equals the mean
// of the concatenation of the groups.
Rational pooled_mean(const std::vector<ResponseSet>& groups);

// M(ai) - M(human); positive favors the AI collection.
// Error("item_mismatch") when item ids differ.
Rational diff_means(const ResponseSet& ai, const ResponseSet& human);

struct AgreementFractions {
    Rational agree;     // values >= 1
    Rational disagree;  // values <= -1
    Rational neutral;   // values == 0
};
AgreementFractions agreement_fractions(const ResponseSet& r);

} // namespace reviewkit::survey

#pragma once

#include "reviewkit/eval/types.hpp"

#include <array>

namespace reviewkit::eval {

struct RecallCell {
    size_t n = 0;
    size_t caught = 0;

    double rate() const { return n == 0 ? 0.0 : static_cast<double>(caught) / n; }
};

// criterion ("all" included) -> variant label -> cell.
struct RecallTable {
    std::map<std::string, std::map<std::string, RecallCell>> cells;

    const RecallCell& at(const std::string& criterion, const std::string& variant) const;
};

// Error("duplicate_judgment") when one (perturbation, variant) pair
// appears twice; Error("invalid_argument") when a perturbation has no
// criterion mapping.
RecallTable detection_rates(const std::vector<Judgment>& judgments,
                            const std::map<std::string, std::string>& criterion_of);

struct DetectionMatrix {
    std::array<std::string, 5> criteria;  // row order == kCriteria
    std::array<std::string, 5> stages;    // column order == kCriteria
    std::array<std::array<double, 5>, 5> cells{};
    std::array<size_t, 5> row_n{};
    std::array<double, 5> targetedness_margin{};  // diagonal - max off-diagonal
};

// Builds the stage-by-criterion matrix from targeted-variant judgments.
// Every (criterion, stage) pair needs at least one judgment:
// Error("incomplete_coverage") otherwise.
DetectionMatrix detection_matrix(const std::vector<Judgment>& judgments,
                                 const std::map<std::string, std::string>& criterion_of);

std::string matrix_to_csv(const DetectionMatrix& matrix);

} // namespace reviewkit::eval

#include "reviewkit/eval/rates.hpp"

#include "reviewkit/curation/types.hpp"
#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/strings.hpp"

#include <set>
#include <sstream>

namespace reviewkit::eval {

const RecallCell& RecallTable::at(const std::string& criterion,
                                  const std::string& variant) const {
    auto row = cells.find(criterion);
    if (row == cells.end()) {
        throw Error("invalid_argument", "no recall row for criterion '" + criterion + "'");
    }
    auto cell = row->second.find(variant);
    if (cell == row->second.end()) {
        throw Error("invalid_argument", "no recall cell for variant '" + variant + "'");
    }
    return cell->second;
}

RecallTable detection_rates(const std::vector<Judgment>& judgments,
                            const std::map<std::string, std::string>& criterion_of) {
    RecallTable table;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& j : judgments) {
        if (!seen.emplace(j.perturbation_id, j.variant).second) {
            throw Error("duplicate_judgment", "perturbation '" + j.perturbation_id +
                                                  "' judged twice under variant '" +
                                                  j.variant + "'");
        }
        auto it = criterion_of.find(j.perturbation_id);
        if (it == criterion_of.end()) {
            throw Error("invalid_argument",
                        "no criterion for perturbation '" + j.perturbation_id + "'");
        }
        auto& cell = table.cells[it->second][j.variant];
        ++cell.n;
        if (j.caught) ++cell.caught;
        auto& all = table.cells["all"][j.variant];
        ++all.n;
        if (j.caught) ++all.caught;
    }
    return table;
}

DetectionMatrix detection_matrix(const std::vector<Judgment>& judgments,
                                 const std::map<std::string, std::string>& criterion_of) {
    DetectionMatrix matrix;
    for (size_t i = 0; i < curation::kCriteria.size(); ++i) {
        matrix.criteria[i] = curation::kCriteria[i];
        matrix.stages[i] = curation::kCriteria[i];
    }
    auto index_of = [&](const std::string& name) -> int {
        for (size_t i = 0; i < matrix.criteria.size(); ++i) {
            if (matrix.criteria[i] == name) return static_cast<int>(i);
        }
        return -1;
    };

    std::array<std::array<RecallCell, 5>, 5> cells{};
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& j : judgments) {
        if (j.variant.rfind("targeted:", 0) != 0) continue;
        if (!seen.emplace(j.perturbation_id, j.variant).second) {
            throw Error("duplicate_judgment", "perturbation '" + j.perturbation_id +
                                                  "' judged twice under '" + j.variant + "'");
        }
        const int column = index_of(j.variant.substr(9));
        auto it = criterion_of.find(j.perturbation_id);
        if (column < 0 || it == criterion_of.end()) {
            throw Error("invalid_argument", "judgment outside the five-stage grid");
        }
        const int row = index_of(it->second);
        if (row < 0) {
            throw Error("invalid_argument", "criterion '" + it->second + "' not in the grid");
        }
        auto& cell = cells[static_cast<size_t>(row)][static_cast<size_t>(column)];
        ++cell.n;
        if (j.caught) ++cell.caught;
    }

    for (size_t r = 0; r < 5; ++r) {
        for (size_t c = 0; c < 5; ++c) {
            if (cells[r][c].n == 0) {
                throw Error("incomplete_coverage",
                            "no judgments for criterion '" + matrix.criteria[r] +
                                "' under stage '" + matrix.stages[c] + "'");
            }
            matrix.cells[r][c] = cells[r][c].rate();
        }
        matrix.row_n[r] = cells[r][r].n;
        double best_off_diagonal = 0.0;
        for (size_t c = 0; c < 5; ++c) {
            if (c != r) best_off_diagonal = std::max(best_off_diagonal, matrix.cells[r][c]);
        }
        matrix.targetedness_margin[r] = matrix.cells[r][r] - best_off_diagonal;
    }
    return matrix;
}

std::string matrix_to_csv(const DetectionMatrix& matrix) {
    std::ostringstream out;
    std::vector<std::string> header = {"criterion", "n"};
    for (const auto& stage : matrix.stages) header.push_back("stage_" + stage);
    header.push_back("targetedness_margin");
    csv::write_row(out, header);
    for (size_t r = 0; r < 5; ++r) {
        std::vector<std::string> row = {matrix.criteria[r], std::to_string(matrix.row_n[r])};
        for (size_t c = 0; c < 5; ++c) {
            row.push_back(strings::format_decimal(matrix.cells[r][c], 4));
        }
        row.push_back(strings::format_decimal(matrix.targetedness_margin[r], 4));
        csv::write_row(out, row);
    }
    return out.str();
}

} // namespace reviewkit::eval

#include "reviewkit/eval/types.hpp"

#include "reviewkit/curation/types.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"

#include <json.hpp>

namespace reviewkit::eval {

using nlohmann::json;

ReviewVariant ReviewVariant::targeted(std::string stage_name) {
    if (!curation::is_criterion(stage_name)) {
        throw Error("invalid_argument",
                    "targeted variant stage '" + stage_name + "' is not a core stage");
    }
    return {Kind::targeted, std::move(stage_name)};
}

std::string ReviewVariant::label() const {
    switch (kind) {
    case Kind::baseline: return "baseline";
    case Kind::targeted: return "targeted:" + stage;
    case Kind::final_review: return "final";
    }
    return "?";
}

ReviewVariant ReviewVariant::from_label(const std::string& label) {
    if (label == "baseline") return baseline();
    if (label == "final") return final_review();
    if (label.rfind("targeted:", 0) == 0) return targeted(label.substr(9));
    throw Error("invalid_argument", "unknown variant label '" + label + "'");
}

std::string judgment_to_json_line(const Judgment& j) {
    json doc;
    doc["perturbation_id"] = j.perturbation_id;
    doc["variant"] = j.variant;
    doc["caught"] = j.caught;
    doc["supporting_excerpt"] = j.supporting_excerpt;
    doc["justification"] = j.justification;
    if (!j.downgrade_reason.empty()) doc["downgrade_reason"] = j.downgrade_reason;
    return doc.dump();
}

Judgment judgment_from_json_line(const std::string& line) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) {
        throw Error("corrupt_record", "unparseable judgment line");
    }
    Judgment j;
    j.perturbation_id = doc.value("perturbation_id", "");
    j.variant = doc.value("variant", "");
    j.caught = doc.value("caught", false);
    j.supporting_excerpt = doc.value("supporting_excerpt", "");
    j.justification = doc.value("justification", "");
    j.downgrade_reason = doc.value("downgrade_reason", "");
    return j;
}

std::vector<Judgment> load_judgments_jsonl(const std::filesystem::path& path) {
    std::vector<Judgment> out;
    for (const auto& line : strings::split(fs::read_text(path), '\n')) {
        if (strings::trim(line).empty()) continue;
        out.push_back(judgment_from_json_line(line));
    }
    return out;
}

void append_judgment_jsonl(const std::filesystem::path& path, const Judgment& j) {
    fs::append_line(path, judgment_to_json_line(j));
}

} // namespace reviewkit::eval

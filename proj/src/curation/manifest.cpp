#include "reviewkit/curation/manifest.hpp"

#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"

#include <json.hpp>

#include <numeric>

namespace reviewkit::curation {

using nlohmann::json;

DatasetManifest build_manifest(const std::vector<SourcePaper>& papers,
                               std::vector<Perturbation> perturbations,
                               const std::string& venue_id,
                               const std::string& generator_backend_id,
                               const std::string& created_at) {
    DatasetManifest manifest;
    manifest.venue_id = venue_id;
    manifest.generator_backend_id = generator_backend_id;
    manifest.created_at = created_at;
    for (const auto& paper : papers) {
        if (!paper.eligible()) {
            throw Error("invalid_argument", "paper '" + paper.proceedings_id +
                                                "' is not eligible (no match or no compile)");
        }
        manifest.paper_ids.push_back(paper.proceedings_id);
    }
    for (const auto& pert : perturbations) {
        if (!is_criterion(pert.criterion)) {
            throw Error("invalid_argument",
                        "perturbation '" + pert.perturbation_id + "' has unknown criterion");
        }
        ++manifest.per_criterion[pert.criterion];
    }
    manifest.perturbations = std::move(perturbations);
    return manifest;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
    json doc;
    doc["venue_id"] = manifest.venue_id;
    doc["generator_backend_id"] = manifest.generator_backend_id;
    doc["created_at"] = manifest.created_at;
    doc["paper_ids"] = manifest.paper_ids;
    doc["total"] = manifest.total();
    doc["per_criterion"] = manifest.per_criterion;
    doc["perturbations"] = json::array();
    for (const auto& p : manifest.perturbations) {
        doc["perturbations"].push_back({{"perturbation_id", p.perturbation_id},
                                        {"paper_id", p.paper_id},
                                        {"criterion", p.criterion},
                                        {"subtype", p.subtype},
                                        {"description", p.description},
                                        {"target_file", p.target_file},
                                        {"line_start", p.line_start},
                                        {"line_end", p.line_end},
                                        {"original_span", p.original_span},
                                        {"modified_span", p.modified_span},
                                        {"modified_tree", p.modified_tree.string()},
                                        {"output_pdf", p.output_pdf.string()}});
    }
    return doc.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw Error("count_mismatch", "manifest is not valid JSON");

    DatasetManifest manifest;
    manifest.venue_id = doc.value("venue_id", "");
    manifest.generator_backend_id = doc.value("generator_backend_id", "");
    manifest.created_at = doc.value("created_at", "");
    for (const auto& id : doc.value("paper_ids", json::array())) {
        manifest.paper_ids.push_back(id.get<std::string>());
    }
    for (const auto& item : doc.value("perturbations", json::array())) {
        Perturbation p;
        p.perturbation_id = item.value("perturbation_id", "");
        p.paper_id = item.value("paper_id", "");
        p.criterion = item.value("criterion", "");
        p.subtype = item.value("subtype", "");
        p.description = item.value("description", "");
        p.target_file = item.value("target_file", "");
        p.line_start = item.value("line_start", 0);
        p.line_end = item.value("line_end", 0);
        p.original_span = item.value("original_span", "");
        p.modified_span = item.value("modified_span", "");
        p.modified_tree = item.value("modified_tree", "");
        p.output_pdf = item.value("output_pdf", "");
        manifest.perturbations.push_back(std::move(p));
    }
    if (doc.contains("per_criterion")) {
        for (const auto& [criterion, count] : doc["per_criterion"].items()) {
            manifest.per_criterion[criterion] = count.get<size_t>();
        }
    }

    size_t declared_total = doc.value("total", manifest.perturbations.size());
    size_t criterion_sum = std::accumulate(
        manifest.per_criterion.begin(), manifest.per_criterion.end(), size_t{0},
        [](size_t acc, const auto& kv) { return acc + kv.second; });
    if (criterion_sum != declared_total || declared_total != manifest.perturbations.size()) {
        throw Error("count_mismatch",
                    "per-criterion counts sum to " + std::to_string(criterion_sum) +
                        " but the manifest declares " + std::to_string(declared_total) +
                        " of " + std::to_string(manifest.perturbations.size()) + " records");
    }
    return manifest;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    fs::write_text(path, manifest_to_json(manifest));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    return manifest_from_json(fs::read_text(path));
}

} // namespace reviewkit::curation

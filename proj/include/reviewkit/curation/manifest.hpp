#pragma once

#include "reviewkit/curation/types.hpp"

namespace reviewkit::curation {

struct DatasetManifest {
    std::string venue_id;
    std::vector<std::string> paper_ids;
    std::vector<Perturbation> perturbations;
    std::map<std::string, size_t> per_criterion;  // criterion -> count
    std::string generator_backend_id;
    std::string created_at;  // UTC ISO-8601

    size_t total() const { return perturbations.size(); }
};

// Tallies per-criterion counts. Error("count_mismatch") never fires when
// built through here; it guards manifests loaded from disk.
DatasetManifest build_manifest(const std::vector<SourcePaper>& papers,
                               std::vector<Perturbation> perturbations,
                               const std::string& venue_id = "",
                               const std::string& generator_backend_id = "",
                               const std::string& created_at = "");

std::string manifest_to_json(const DatasetManifest& manifest);

// Error("count_mismatch") when the stored per-criterion counts do not
// sum to the stored total.
DatasetManifest manifest_from_json(const std::string& text);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

} // namespace reviewkit::curation

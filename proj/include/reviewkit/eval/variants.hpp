#pragma once

#include "reviewkit/curation/manifest.hpp"
#include "reviewkit/engine/pipeline.hpp"
#include "reviewkit/eval/types.hpp"

#include <functional>

namespace reviewkit::eval {

struct VariantRunItem {
    std::string perturbation_id;
    review::Review review;
    bool ok = true;
    std::string error;
};

// Supplies the (perturbed) paper bundle a variant reviews. The default
// provider ingests the perturbation's compiled PDF with the fixture OCR.
using BundleProvider = std::function<ingest::PaperBundle(const curation::Perturbation&)>;

BundleProvider ingest_bundle_provider(int target_dpi = ingest::kDefaultTargetDpi);

struct VariantRunOptions {
    std::string backend_id = "fixture";
    std::filesystem::path run_dir;  // stage records root for this variant
};

// One review per perturbation under the variant's plan: baseline = the
// one-shot prompt, targeted = that single core stage, final = the full
// 8-stage pipeline. Per-item failures are recorded on the item, never
// thrown.
std::vector<VariantRunItem> run_variant(const curation::DatasetManifest& manifest,
                                        const ReviewVariant& variant,
                                        const gateway::Gateway& gateway,
                                        const engine::PromptRegistry& registry,
                                        const BundleProvider& bundles,
                                        const VariantRunOptions& options, Clock& clock);

} // namespace reviewkit::eval

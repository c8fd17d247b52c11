#include "reviewkit/eval/variants.hpp"

#include "reviewkit/ingest/bundle.hpp"
#include "reviewkit/util/fs.hpp"

#include <algorithm>

namespace reviewkit::eval {

namespace {

engine::StagePlan plan_for(const ReviewVariant& variant, const std::string& backend_id) {
    switch (variant.kind) {
    case ReviewVariant::Kind::baseline:
        return engine::StagePlan::baseline_plan(backend_id);
    case ReviewVariant::Kind::targeted:
        return engine::StagePlan::targeted_plan(variant.stage, backend_id);
    case ReviewVariant::Kind::final_review:
        return engine::StagePlan::default_plan(backend_id);
    }
    throw Error("invalid_argument", "unknown variant kind");
}

std::string sanitize(const std::string& label) {
    std::string out = label;
    std::replace(out.begin(), out.end(), ':', '-');
    return out;
}

} // namespace

BundleProvider ingest_bundle_provider(int target_dpi) {
    return [target_dpi](const curation::Perturbation& pert) {
        auto raw = fs::read_bytes(pert.output_pdf);
        ingest::FixtureOcr ocr;
        ingest::IngestOptions options;
        options.target_dpi = target_dpi;
        return ingest::ingest_pdf(raw, ocr, options, pert.perturbation_id);
    };
}

std::vector<VariantRunItem> run_variant(const curation::DatasetManifest& manifest,
                                        const ReviewVariant& variant,
                                        const gateway::Gateway& gateway,
                                        const engine::PromptRegistry& registry,
                                        const BundleProvider& bundles,
                                        const VariantRunOptions& options, Clock& clock) {
    const auto plan = plan_for(variant, options.backend_id);
    plan.validate(registry);

    engine::CheckpointStore store(options.run_dir.empty()
                                      ? std::filesystem::temp_directory_path() /
                                            ("rk_variant_" + sanitize(variant.label()))
                                      : options.run_dir / sanitize(variant.label()));

    std::vector<VariantRunItem> items;
    items.reserve(manifest.perturbations.size());
    for (const auto& pert : manifest.perturbations) {
        VariantRunItem item;
        item.perturbation_id = pert.perturbation_id;
        try {
            auto bundle = bundles(pert);
            // Stage records are keyed per (perturbation, variant).
            bundle.paper_id = pert.perturbation_id;
            bundle.pdf.paper_id = bundle.paper_id;
            bundle.markdown.paper_id = bundle.paper_id;
            auto result = engine::run_pipeline(bundle, plan, gateway, registry, store, clock);
            item.review = review::parse_review(pert.paper_id, result.review_body);
        } catch (const Error& e) {
            item.ok = false;
            item.error = e.what();
        }
        items.push_back(std::move(item));
    }
    return items;
}

} // namespace reviewkit::eval

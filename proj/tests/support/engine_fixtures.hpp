#pragma once

// Shared helpers for pipeline/batch tests: tiny bundles and scripted
// backends covering the default 8-stage plan.

#include "reviewkit/engine/plan.hpp"
#include "reviewkit/gateway/fixture.hpp"
#include "reviewkit/ingest/bundle.hpp"
#include "reviewkit/ingest/normalize.hpp"

#include "support/pdf_fixtures.hpp"

namespace fixtures {

inline reviewkit::ingest::PaperBundle tiny_bundle(const std::string& paper_id) {
    const std::string pdf = pdf_without_images(1);
    auto norm = reviewkit::ingest::normalize_pdf(
        {reinterpret_cast<const uint8_t*>(pdf.data()), pdf.size()}, 250, paper_id);
    reviewkit::ingest::FixtureOcr ocr;
    auto md = reviewkit::ingest::convert_to_markdown(norm, ocr);
    return reviewkit::ingest::build_bundle(std::move(norm), std::move(md));
}

inline const char* kScriptedFinalReview =
    "# Review of the Tiny Paper\n\n## Synopsis\nA miniature study.\n\n"
    "## Summary\nSound but small.\n\n## Strengths\n- compact\n\n"
    "## Weaknesses\n- tiny\n\n## References\n- Doe, J. (2020). Tiny things. VenueX.\n";

// Script for a full 8-stage run; `copies` entries per stage so several
// papers can share one backend.
inline reviewkit::gateway::Script full_run_script(int copies = 1,
                                                  int fail_fatal_at_stage = -1) {
    using reviewkit::gateway::ScriptEntry;
    reviewkit::gateway::Script script;
    int index = 0;
    for (const char* stage : reviewkit::engine::kDefaultStageOrder) {
        std::vector<ScriptEntry> entries;
        for (int c = 0; c < copies; ++c) {
            if (index == fail_fatal_at_stage) {
                entries.push_back(ScriptEntry::fail_fatal("scripted stage failure"));
            } else if (std::string(stage) == "final_review") {
                entries.push_back(ScriptEntry::respond(kScriptedFinalReview));
            } else {
                entries.push_back(
                    ScriptEntry::respond(std::string("findings of ") + stage + " stage"));
            }
        }
        script[stage] = std::move(entries);
        ++index;
    }
    return script;
}

} // namespace fixtures

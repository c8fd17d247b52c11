#include "commands.hpp"

#include "reviewkit/review/citations.hpp"
#include "reviewkit/review/critic.hpp"
#include "reviewkit/review/oversight.hpp"
#include "reviewkit/survey/report.hpp"
#include "reviewkit/util/fs.hpp"

#include <algorithm>
#include <iostream>

namespace rkcli {

using namespace reviewkit;

int cmd_survey_analyze(const SurveyAnalyzeArgs& args) {
    try {
        ContextOptions options = args.context;
        options.needs_backend = false;
        Context ctx = make_context(options);
        (void)ctx;
        if (!std::filesystem::exists(args.responses)) {
            throw Error("input", "responses file not found: " + args.responses);
        }
        auto items = survey::load_responses_csv(fs::read_text(args.responses));
        // Items with one side missing cannot be compared.
        for (const auto& item : items) {
            if (item.ai.values.empty() || item.human.values.empty()) {
                throw Error("csv_row", "item '" + item.item_id +
                                           "' lacks responses for one review type");
            }
        }
        auto results = survey::comparison_report(items);
        fs::write_text(args.out, survey::render_comparison_csv(results));
        std::cout << "comparison report (" << results.size() << " item(s)): " << args.out
                  << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_qa_run(const QaRunArgs& args) {
    try {
        Context ctx = make_context(args.context);
        const std::filesystem::path reviews_dir(args.reviews);
        if (!std::filesystem::is_directory(reviews_dir)) {
            throw Error("input", "reviews directory not found: " + args.reviews);
        }

        std::unique_ptr<review::CitationResolver> resolver;
        if (!args.index.empty()) {
            resolver = std::make_unique<review::OfflineIndexResolver>(
                review::OfflineIndexResolver::from_jsonl_file(args.index));
        } else {
            resolver = std::make_unique<review::OfflineIndexResolver>(
                std::vector<review::BibEntry>{});
        }

        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(reviews_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".md") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw Error("input", "no .md reviews under " + args.reviews);
        }

        std::vector<review::OversightEntry> entries;
        for (const auto& file : files) {
            // A file named review.md takes its paper id from the directory.
            const std::string paper_id = file.filename() == "review.md"
                                             ? file.parent_path().filename().string()
                                             : file.stem().string();
            auto parsed = review::parse_review(paper_id, fs::read_text(file));
            review::OversightEntry entry;
            entry.paper_id = parsed.paper_id;
            try {
                entry.findings =
                    review::run_quality_critic(parsed, *ctx.gateway, ctx.backend_id);
            } catch (const review::ParseFailure& e) {
                // Taxonomy violation from the critic: keep the run going,
                // flag the row, preserve the raw output for inspection.
                entry.findings.rationales["critic_parse_failure"] =
                    std::string(e.what()) + " | raw: " + e.raw().substr(0, 200);
                entry.findings.review_issues.insert(review::ReviewIssue::missing_structure);
            }
            entry.audit = review::audit_citations(parsed, *resolver);
            entries.push_back(std::move(entry));
        }

        auto report = review::compile_oversight_report(std::move(entries));
        const std::filesystem::path out(args.out);
        std::filesystem::create_directories(out);
        review::write_oversight_report(report, out / "oversight.csv", out / "oversight.json");
        std::cout << "oversight report over " << report.total << " review(s), "
                  << report.flagged_count << " flagged: " << (out / "oversight.csv").string()
                  << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

} // namespace rkcli

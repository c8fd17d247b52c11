#include "commands.hpp"

#include "reviewkit/curation/manifest.hpp"
#include "reviewkit/curation/matching.hpp"
#include "reviewkit/curation/perturb.hpp"
#include "reviewkit/curation/sampling.hpp"
#include "reviewkit/eval/judge.hpp"
#include "reviewkit/eval/rates.hpp"
#include "reviewkit/eval/report.hpp"
#include "reviewkit/eval/variants.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/strings.hpp"
#include "reviewkit/util/subprocess.hpp"

#include <json.hpp>

#include <iostream>
#include <mutex>
#include <thread>

namespace rkcli {

using namespace reviewkit;
using nlohmann::json;

namespace {

std::vector<curation::ProceedingsEntry> read_proceedings(const std::filesystem::path& path) {
    json doc = json::parse(fs::read_text(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw Error("input", "proceedings file must be a JSON array of entries");
    }
    std::vector<curation::ProceedingsEntry> entries;
    for (const auto& item : doc) {
        curation::ProceedingsEntry e;
        e.id = item.value("id", "");
        e.title = item.value("title", "");
        e.track = item.value("track", "");
        for (const auto& a : item.value("authors", json::array())) {
            e.authors.push_back(a.get<std::string>());
        }
        if (e.id.empty() || e.title.empty()) {
            throw Error("input", "proceedings entry without id/title");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

void require_toolchain(const curation::CompileOptions& options) {
    if (options.command.empty() || !proc::command_exists(options.command[0])) {
        throw Error("toolchain_missing",
                    "typesetting toolchain '" +
                        (options.command.empty() ? "<unset>" : options.command[0]) +
                        "' not found; set SPECS_COMPILE_CMD or --compile-cmd "
                        "(the bundled 'stubtex' works offline)");
    }
}

} // namespace

int cmd_specs_curate(const SpecsCurateArgs& args) {
    try {
        Context ctx = make_context(args.context);
        auto proceedings = read_proceedings(args.proceedings);
        auto compile_options = resolve_compile_options(ctx, args.compile_cmd);
        require_toolchain(compile_options);

        std::vector<curation::ProceedingsEntry> candidates;
        if (args.total == 0) {
            candidates = proceedings;
        } else {
            curation::QuotaPolicy quota;
            quota.kind = args.policy == "uniform" ? curation::QuotaPolicy::Kind::uniform
                                                  : curation::QuotaPolicy::Kind::proportional;
            quota.total = args.total;
            candidates = curation::sample_candidates(proceedings, quota, args.context.seed);
        }

        auto index = curation::LocalSourceIndex::from_directory(args.sources);
        const std::filesystem::path out(args.out);
        std::vector<curation::SourcePaper> eligible;
        size_t no_match = 0, no_compile = 0;
        for (const auto& entry : candidates) {
            curation::SourcePaper paper;
            paper.proceedings_id = entry.id;
            paper.title = entry.title;
            paper.track = entry.track;
            paper.match = curation::match_source(entry, index);
            if (!paper.match) {
                ++no_match;
                continue;
            }
            // Copy the source tree into the dataset, then gate on compile.
            std::filesystem::path src_tree =
                std::filesystem::path(args.sources) / paper.match->source_id / "tree";
            auto dst = out / entry.id / "source";
            std::filesystem::remove_all(dst);
            fs::copy_tree(src_tree, dst);
            auto compiled = curation::verify_compiles(dst, compile_options);
            paper.compile_ok = compiled.ok;
            paper.compile_log = compiled.log_excerpt;
            paper.source_tree = dst;
            if (!compiled.ok) {
                ++no_compile;
                std::filesystem::remove_all(out / entry.id);
                continue;
            }
            eligible.push_back(std::move(paper));
        }

        auto manifest = curation::build_manifest(eligible, {}, args.venue, ctx.backend_id,
                                                 format_utc(ctx.clock->now()));
        curation::write_manifest(manifest, out / "manifest.json");
        std::cout << "seed: " << args.context.seed << "\n";
        std::cout << "curated " << eligible.size() << " of " << candidates.size()
                  << " candidates (" << no_match << " without source match, " << no_compile
                  << " failed to compile)\nmanifest: "
                  << (out / "manifest.json").string() << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_specs_perturb(const SpecsPerturbArgs& args) {
    try {
        Context ctx = make_context(args.context);
        auto compile_options = resolve_compile_options(ctx, args.compile_cmd);
        require_toolchain(compile_options);

        const std::filesystem::path root(args.dataset);
        auto manifest = curation::load_manifest(root / "manifest.json");
        auto registry = curation::SubtypeRegistry::with_defaults();

        std::vector<std::string> criteria;
        if (args.criterion.empty()) {
            criteria.assign(curation::kCriteria.begin(), curation::kCriteria.end());
        } else {
            criteria.push_back(args.criterion);
        }

        // Generation is sequential (one backend conversation per paper x
        // criterion); the compile gates run in parallel below.
        struct GateJob {
            curation::PerturbationProposal proposal;
            std::filesystem::path tree;
            std::filesystem::path pert_dir;
            std::string pert_id;
            std::string paper_id;
        };
        std::vector<GateJob> jobs;
        for (const auto& paper_id : manifest.paper_ids) {
            const auto tree = root / paper_id / "source";
            for (const auto& criterion : criteria) {
                std::string subtype = args.subtype.empty()
                                          ? registry.subtypes(criterion).at(0)
                                          : args.subtype;
                auto proposals = curation::generate_perturbations(
                    tree, criterion, subtype, registry, *ctx.gateway, ctx.backend_id);
                for (auto& proposal : proposals) {
                    std::string pert_id =
                        paper_id + "-" + criterion + "-" + std::to_string(jobs.size());
                    auto pert_dir = root / paper_id / "perturbations" / pert_id;
                    jobs.push_back({std::move(proposal), tree, pert_dir, pert_id, paper_id});
                }
            }
        }

        const size_t cap = static_cast<size_t>(
            std::max<int64_t>(1, ctx.config.get_int("curation.compile_jobs", 4)));
        std::vector<curation::AcceptOutcome> outcomes(jobs.size(),
                                                      curation::Rejection{});
        std::mutex cursor_mutex;
        size_t cursor = 0;
        auto worker = [&] {
            while (true) {
                size_t index;
                {
                    std::lock_guard lock(cursor_mutex);
                    if (cursor >= jobs.size()) return;
                    index = cursor++;
                }
                const auto& job = jobs[index];
                std::filesystem::create_directories(job.pert_dir);
                outcomes[index] = curation::accept_perturbation(
                    job.tree, job.proposal, compile_options, job.pert_dir, job.pert_id,
                    job.paper_id);
            }
        };
        std::vector<std::thread> pool;
        for (size_t i = 0; i < std::min(cap, std::max<size_t>(1, jobs.size())); ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) t.join();

        // Single-writer manifest assembly, in job order.
        size_t accepted_count = 0, rejected_count = 0;
        for (size_t i = 0; i < jobs.size(); ++i) {
            if (std::holds_alternative<curation::Perturbation>(outcomes[i])) {
                const auto& accepted = std::get<curation::Perturbation>(outcomes[i]);
                manifest.perturbations.push_back(accepted);
                ++manifest.per_criterion[accepted.criterion];
                ++accepted_count;
            } else {
                const auto& rejection = std::get<curation::Rejection>(outcomes[i]);
                fs::write_text(jobs[i].pert_dir / "rejected.txt",
                               std::string(curation::to_string(rejection.reason)) + "\n" +
                                   rejection.detail + "\n");
                ++rejected_count;
            }
        }
        curation::write_manifest(manifest, root / "manifest.json");
        std::cout << "perturbations: " << accepted_count << " accepted, " << rejected_count
                  << " rejected (" << pool.size() << " gate worker(s)); dataset total now "
                  << manifest.total() << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_specs_judge(const SpecsJudgeArgs& args) {
    try {
        Context ctx = make_context(args.context);
        const std::filesystem::path root(args.dataset);
        const std::filesystem::path out(args.out);
        auto manifest = curation::load_manifest(root / "manifest.json");
        if (manifest.perturbations.empty()) {
            throw Error("input", "dataset has no perturbations to judge");
        }

        std::vector<eval::ReviewVariant> variants;
        for (const auto& name : strings::split(args.variants, ',')) {
            const std::string v = strings::trim(name);
            if (v.empty()) continue;
            if (v == "targeted") {
                for (const char* stage : curation::kCriteria) {
                    variants.push_back(eval::ReviewVariant::targeted(stage));
                }
            } else {
                variants.push_back(eval::ReviewVariant::from_label(v));
            }
        }
        if (variants.empty()) throw Error("input", "no variants requested");

        std::filesystem::create_directories(out);
        const auto judgments_path = out / "judgments.jsonl";
        std::filesystem::remove(judgments_path);

        json run_manifest;
        run_manifest["config_digest"] = ctx.config.digest();
        run_manifest["seed"] = ctx.seed;
        run_manifest["mock"] = ctx.mock;
        run_manifest["dataset"] = root.string();
        run_manifest["created_at"] = format_utc(ctx.clock->now());
        fs::write_text(out / "run.json", run_manifest.dump(2) + "\n");

        json criteria;
        for (const auto& pert : manifest.perturbations) {
            criteria[pert.perturbation_id] = pert.criterion;
        }
        fs::write_text(out / "criteria.json", criteria.dump(2) + "\n");

        eval::VariantRunOptions run_options;
        run_options.backend_id = ctx.backend_id;
        run_options.run_dir = out / "stage-records";
        auto provider = eval::ingest_bundle_provider(
            static_cast<int>(ctx.config.get_int("ingest.target_dpi", 250)));

        size_t judged = 0, failed = 0;
        for (const auto& variant : variants) {
            auto items = eval::run_variant(manifest, variant, *ctx.gateway, ctx.prompts,
                                           provider, run_options, *ctx.clock);
            std::map<std::string, const curation::Perturbation*> by_id;
            for (const auto& pert : manifest.perturbations) {
                by_id[pert.perturbation_id] = &pert;
            }
            for (const auto& item : items) {
                if (!item.ok) {
                    ++failed;
                    fs::append_line(out / "failures.jsonl",
                                    json({{"perturbation_id", item.perturbation_id},
                                          {"variant", variant.label()},
                                          {"error", item.error}})
                                        .dump());
                    continue;
                }
                auto judgment = eval::judge_review(item.review, *by_id.at(item.perturbation_id),
                                                   variant, *ctx.gateway, ctx.backend_id);
                eval::append_judgment_jsonl(judgments_path, judgment);
                ++judged;
            }
        }
        std::cout << judged << " judgment records written to " << judgments_path.string();
        if (failed) std::cout << " (" << failed << " item(s) failed; see failures.jsonl)";
        std::cout << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

int cmd_specs_report(const SpecsReportArgs& args) {
    try {
        ContextOptions options = args.context;
        options.needs_backend = false;
        Context ctx = make_context(options);
        (void)ctx;
        const std::filesystem::path in(args.judgments);
        const std::filesystem::path out(args.out.empty() ? args.judgments : args.out);
        auto judgments = eval::load_judgments_jsonl(in / "judgments.jsonl");

        std::map<std::string, std::string> criterion_of;
        json criteria = json::parse(fs::read_text(in / "criteria.json"));
        for (const auto& [id, criterion] : criteria.items()) {
            criterion_of[id] = criterion.get<std::string>();
        }

        auto report = eval::build_benchmark_report(judgments, criterion_of);
        std::filesystem::create_directories(out);
        fs::write_text(out / "results.csv", report.to_csv());
        fs::write_text(out / "results.json", report.to_json());

        std::string matrix_note;
        try {
            auto matrix = eval::detection_matrix(judgments, criterion_of);
            fs::write_text(out / "matrix.csv", eval::matrix_to_csv(matrix));
            matrix_note = "matrix: " + (out / "matrix.csv").string();
        } catch (const Error& e) {
            matrix_note = std::string("matrix skipped: ") + e.what();
        }

        if (report.recall.cells.count("all") &&
            report.recall.cells.at("all").count("baseline")) {
            std::cout << "overall baseline recall: "
                      << strings::format_decimal(
                             report.recall.at("all", "baseline").rate(), 4)
                      << "\n";
        }
        std::cout << "results: " << (out / "results.csv").string() << "\n"
                  << matrix_note << "\n";
        return kOk;
    } catch (const Error& e) {
        return fail(e);
    }
}

} // namespace rkcli

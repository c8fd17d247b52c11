#include <doctest.h>

#include "reviewkit/curation/compile_gate.hpp"
#include "reviewkit/curation/manifest.hpp"
#include "reviewkit/curation/matching.hpp"
#include "reviewkit/curation/oversight.hpp"
#include "reviewkit/curation/perturb.hpp"
#include "reviewkit/curation/sampling.hpp"
#include "reviewkit/gateway/fixture.hpp"
#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"

#include "support/tex_fixtures.hpp"

#include <filesystem>
#include <random>

using namespace reviewkit;
using namespace reviewkit::curation;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
        : path(std::filesystem::temp_directory_path() / ("rk_cur_" + tag)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

CompileOptions stub_options() {
    CompileOptions options;
    options.command = {fixtures::stubtex_path()};
    options.timeout = std::chrono::milliseconds(20000);
    return options;
}

std::vector<ProceedingsEntry> two_track_pool(size_t per_track) {
    std::vector<ProceedingsEntry> pool;
    for (size_t i = 0; i < per_track; ++i) {
        pool.push_back({"a" + std::to_string(i), "Paper A" + std::to_string(i), {"Doe, J."},
                        "track-a"});
        pool.push_back({"b" + std::to_string(i), "Paper B" + std::to_string(i), {"Roe, R."},
                        "track-b"});
    }
    return pool;
}

} // namespace

TEST_CASE("sampling: uniform quota splits evenly") {
    auto sample = sample_candidates(two_track_pool(10),
                                    {QuotaPolicy::Kind::uniform, 6}, 42);
    REQUIRE(sample.size() == 6);
    size_t a = 0, b = 0;
    for (const auto& e : sample) (e.track == "track-a" ? a : b)++;
    CHECK(a == 3);
    CHECK(b == 3);
}

TEST_CASE("sampling: deterministic for a fixed seed, different across seeds") {
    auto pool = two_track_pool(20);
    auto s1 = sample_candidates(pool, {QuotaPolicy::Kind::uniform, 10}, 7);
    auto s2 = sample_candidates(pool, {QuotaPolicy::Kind::uniform, 10}, 7);
    REQUIRE(s1.size() == s2.size());
    for (size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].id == s2[i].id);

    auto s3 = sample_candidates(pool, {QuotaPolicy::Kind::uniform, 10}, 8);
    bool any_different = false;
    for (size_t i = 0; i < s1.size(); ++i) any_different |= s1[i].id != s3[i].id;
    CHECK(any_different);
}

TEST_CASE("sampling: proportional allocation reproduces the track distribution") {
    // Pool sizes proportional to the observed per-track counts of a
    // 120-paper curation: x3 population per track.
    const std::vector<std::pair<std::string, size_t>> dist = {
        {"game-theory", 39}, {"machine-learning", 30}, {"knowledge-repr", 14},
        {"vision", 12},      {"constraints", 11},      {"data-mining", 8},
        {"robots", 4},       {"humans-ai", 2},
    };
    std::vector<ProceedingsEntry> pool;
    for (const auto& [track, count] : dist) {
        for (size_t i = 0; i < count * 3; ++i) {
            pool.push_back({track + "-" + std::to_string(i), "T", {"A"}, track});
        }
    }
    auto allocation = quota_allocation(pool, {QuotaPolicy::Kind::proportional, 120});
    for (const auto& [track, want] : dist) {
        CHECK(allocation[track] == want);  // 39 = 32.5% of 120 in the largest
    }
    auto sample = sample_candidates(pool, {QuotaPolicy::Kind::proportional, 120}, 3);
    CHECK(sample.size() == 120);
}

TEST_CASE("sampling: demanding more than a category holds is an error") {
    try {
        (void)sample_candidates(two_track_pool(2), {QuotaPolicy::Kind::uniform, 10}, 1);
        FAIL("expected empty_category");
    } catch (const Error& e) {
        CHECK(e.code() == "empty_category");
    }
}

TEST_CASE("match_source: equality, author disagreement, normalization") {
    LocalSourceIndex index({
        {"2401.0001", "Fast  Solvers for Sparse Systems", {"G\u00e9rard Doe", "Liu Wei"}, {}},
        {"2401.0002", "Another Topic", {"Roe, R."}, {}},
    });

    ProceedingsEntry exact{"p1", "Fast Solvers for Sparse Systems",
                           {"Gerard Doe", "Liu Wei"}, "t"};
    auto m = match_source(exact, index);
    REQUIRE(m.has_value());
    CHECK(m->source_id == "2401.0001");

    ProceedingsEntry wrong_authors{"p2", "Fast Solvers for Sparse Systems",
                                   {"Someone Else"}, "t"};
    CHECK_FALSE(match_source(wrong_authors, index).has_value());

    // Case/whitespace/diacritic-insensitive title match.
    ProceedingsEntry noisy{"p3", "  FAST solvers FOR sparse systems ",
                           {"G\u00e9rard Doe", "Liu Wei"}, "t"};
    CHECK(match_source(noisy, index).has_value());
    CHECK(normalize_title("Fast  Solvers!") == normalize_title("fast solvers"));
}

TEST_CASE("verify_compiles: clean tree passes, produces a PDF") {
    TempDir dir("compile_ok");
    fixtures::write_tex_tree(dir.path);
    auto result = verify_compiles(dir.path, stub_options());
    CHECK(result.ok);
    CHECK(std::filesystem::exists(result.pdf_path));
    CHECK_FALSE(result.timed_out);
}

TEST_CASE("verify_compiles: undefined command fails with the error line in the log") {
    TempDir dir("compile_bad");
    fixtures::write_tex_tree(dir.path,
                             "\\documentclass{article}\n\\begin{document}\n"
                             "\\undefinedcommand\n\\end{document}\n");
    auto result = verify_compiles(dir.path, stub_options());
    CHECK_FALSE(result.ok);
    CHECK(result.log_excerpt.find("Undefined control sequence") != std::string::npos);
}

TEST_CASE("verify_compiles: runaway toolchain is killed at the timeout") {
    TempDir dir("compile_loop");
    fixtures::write_tex_tree(dir.path,
                             "\\documentclass{article}\n\\begin{document}\n"
                             "\\loopforever\n\\end{document}\n");
    auto options = stub_options();
    options.timeout = std::chrono::milliseconds(1500);
    auto start = std::chrono::steady_clock::now();
    auto result = verify_compiles(dir.path, options);
    auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK_FALSE(result.ok);
    CHECK(result.timed_out);
    CHECK(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() < 10);
}

TEST_CASE("verify_compiles: missing toolchain is a distinct error") {
    TempDir dir("compile_missing");
    fixtures::write_tex_tree(dir.path);
    CompileOptions options;
    options.command = {"definitely-not-a-real-toolchain-binary"};
    try {
        (void)verify_compiles(dir.path, options);
        FAIL("expected toolchain_missing");
    } catch (const Error& e) {
        CHECK(e.code() == "toolchain_missing");
    }
}

TEST_CASE("proposal parsing: schema violations are malformed_proposal") {
    auto registry = SubtypeRegistry::with_defaults();
    const std::string good = R"({"proposals": [{
        "criterion": "evaluations", "subtype": "missing_baseline",
        "description": "drops the strongest baseline from the comparison",
        "target_file": "main.tex", "line_start": 4, "line_end": 4,
        "original_span": "Our method beats the baseline by 12\\%.",
        "modified_span": "Our method beats all alternatives."}]})";
    auto proposals = parse_proposals(good, registry);
    REQUIRE(proposals.size() == 1);
    CHECK(proposals[0].criterion == "evaluations");

    // Missing line numbers.
    CHECK_THROWS_AS((void)parse_proposals(R"({"proposals": [{
        "criterion": "evaluations", "subtype": "missing_baseline",
        "description": "d", "target_file": "main.tex",
        "original_span": "x", "modified_span": "y"}]})",
                                          registry),
                    Error);
    // Criterion outside the five.
    CHECK_THROWS_AS((void)parse_proposals(R"({"proposals": [{
        "criterion": "novelty", "subtype": "missing_baseline",
        "description": "d", "target_file": "main.tex",
        "line_start": 1, "line_end": 1,
        "original_span": "x", "modified_span": "y"}]})",
                                          registry),
                    Error);
}

TEST_CASE("generate_perturbations: scripted generator, one per criterion") {
    TempDir dir("gen");
    fixtures::write_tex_tree(dir.path);
    auto registry = SubtypeRegistry::with_defaults();

    gateway::Gateway gw;
    std::string canned = R"({"proposals": [{
        "criterion": "evaluations", "subtype": "missing_baseline",
        "description": "removes the baseline comparison",
        "target_file": "main.tex", "line_start": 4, "line_end": 4,
        "original_span": "Our method beats the baseline by 12\\%.",
        "modified_span": "Our method performs well."}]})";
    gateway::Script script{{"perturbation_generator",
                            std::vector<gateway::ScriptEntry>(
                                5, gateway::ScriptEntry::respond(canned))}};
    gw.register_backend("gen", std::make_shared<gateway::FixtureBackend>(script));

    size_t total = 0;
    for (const char* criterion : kCriteria) {
        auto subtype = registry.subtypes(criterion).at(0);
        // The scripted response always claims evaluations/missing_baseline;
        // parseability is what this exercises.
        auto proposals = generate_perturbations(dir.path, criterion, subtype, registry, gw,
                                                "gen");
        CHECK(proposals.size() >= 1);
        total += proposals.size();
    }
    CHECK(total == 5);
}

TEST_CASE("accept_perturbation: exact span + compiling edit is accepted") {
    TempDir dir("accept");
    auto tree = fixtures::write_tex_tree(dir.path / "src");
    TempDir out("accept_out");

    PerturbationProposal p;
    p.criterion = "evaluations";
    p.subtype = "missing_baseline";
    p.description = "weakens the evaluation claim";
    p.target_file = "main.tex";
    p.line_start = 4;
    p.line_end = 4;
    p.original_span = "Our method beats the baseline by 12\\%.";
    p.modified_span = "Our method performs adequately.";

    auto outcome = accept_perturbation(tree, p, stub_options(), out.path, "pert-1", "paper-1");
    REQUIRE(std::holds_alternative<Perturbation>(outcome));
    const auto& accepted = std::get<Perturbation>(outcome);
    CHECK(std::filesystem::exists(accepted.output_pdf));
    CHECK(std::filesystem::exists(accepted.modified_tree / "main.tex"));
    CHECK(fs::read_text(accepted.modified_tree / "main.tex").find("performs adequately") !=
          std::string::npos);
    CHECK(std::filesystem::exists(out.path / "proposal.json"));

    SUBCASE("accepted perturbation re-runs to accepted (gate soundness)") {
        TempDir out2("accept_out2");
        auto again = accept_perturbation(tree, p, stub_options(), out2.path, "pert-1b",
                                         "paper-1");
        CHECK(std::holds_alternative<Perturbation>(again));
    }

    SUBCASE("stored modified tree recompiles and the PDF is non-empty") {
        auto recompiled = verify_compiles(accepted.modified_tree, stub_options());
        CHECK(recompiled.ok);
        CHECK(fs::read_bytes(accepted.output_pdf).size() > 0);
    }
}

TEST_CASE("accept_perturbation: one-character span drift is span_mismatch") {
    TempDir dir("drift");
    auto tree = fixtures::write_tex_tree(dir.path / "src");
    TempDir out("drift_out");

    PerturbationProposal p;
    p.criterion = "story";
    p.subtype = "overclaimed_contribution";
    p.description = "d";
    p.target_file = "main.tex";
    p.line_start = 3;
    p.line_end = 3;
    p.original_span = "We evaluate on three datasets,";  // comma, source has period
    p.modified_span = "We evaluate on many datasets.";

    auto outcome = accept_perturbation(tree, p, stub_options(), out.path, "pert-2", "paper-1");
    REQUIRE(std::holds_alternative<Rejection>(outcome));
    CHECK(std::get<Rejection>(outcome).reason == Rejection::Reason::span_mismatch);
}

TEST_CASE("accept_perturbation: single-byte mutations always span-mismatch") {
    TempDir dir("mutate");
    auto tree = fixtures::write_tex_tree(dir.path / "src");
    TempDir out("mutate_out");

    const std::string true_span = "Our method beats the baseline by 12\\%.";
    std::mt19937_64 rng(1234);
    int rejected = 0;
    const int kTrials = 60;  // the acceptance suite runs the full 200
    for (int t = 0; t < kTrials; ++t) {
        std::string mutated = true_span;
        size_t pos = rng() % mutated.size();
        char delta = static_cast<char>(1 + rng() % 255);
        mutated[pos] = static_cast<char>(mutated[pos] ^ delta);
        if (mutated == true_span) {
            ++rejected;  // xor with nonzero can't collide, but stay safe
            continue;
        }
        // Keep mutations on the same line count: newline bytes would shift
        // the claimed range, which is also a mismatch, so allow them too.
        PerturbationProposal p;
        p.criterion = "story";
        p.subtype = "overclaimed_contribution";
        p.description = "d";
        p.target_file = "main.tex";
        p.line_start = 4;
        p.line_end = 4;
        p.original_span = mutated;
        p.modified_span = "anything";
        auto outcome = accept_perturbation(tree, p, stub_options(), out.path,
                                           "m" + std::to_string(t), "paper-1");
        if (std::holds_alternative<Rejection>(outcome) &&
            std::get<Rejection>(outcome).reason == Rejection::Reason::span_mismatch) {
            ++rejected;
        }
    }
    CHECK(rejected == kTrials);
}

TEST_CASE("accept_perturbation: edit that breaks compilation is rejected with the log") {
    TempDir dir("breaks");
    auto tree = fixtures::write_tex_tree(dir.path / "src");
    TempDir out("breaks_out");

    PerturbationProposal p;
    p.criterion = "correctness";
    p.subtype = "broken_derivation";
    p.description = "d";
    p.target_file = "main.tex";
    p.line_start = 4;
    p.line_end = 4;
    p.original_span = "Our method beats the baseline by 12\\%.";
    p.modified_span = "Our method { beats everything.";  // unbalanced brace

    auto outcome = accept_perturbation(tree, p, stub_options(), out.path, "pert-3", "paper-1");
    REQUIRE(std::holds_alternative<Rejection>(outcome));
    const auto& rejection = std::get<Rejection>(outcome);
    CHECK(rejection.reason == Rejection::Reason::compile_failure);
    CHECK(rejection.detail.find("unclosed group") != std::string::npos);
}

TEST_CASE("record_oversight reproduces the reference consensus shape") {
    // 35 perturbations: per criterion (n, r1 valid, r2 valid, both valid):
    // story 6: 5/5/5; presentation 7: 3/4/3; evaluations 8: 5/6/5;
    // correctness 7: 7/6/6; significance 7: 3/4/3.
    struct RowSpec {
        const char* criterion;
        int n, r1, r2, both;
    };
    const std::vector<RowSpec> spec_rows = {
        {"story", 6, 5, 5, 5},        {"presentation", 7, 3, 4, 3},
        {"evaluations", 8, 5, 6, 5},  {"correctness", 7, 7, 6, 6},
        {"significance", 7, 3, 4, 3},
    };

    std::vector<OversightVerdict> verdicts;
    std::map<std::string, std::string> criterion_of;
    for (const auto& row : spec_rows) {
        for (int i = 0; i < row.n; ++i) {
            std::string id = std::string(row.criterion) + "-" + std::to_string(i);
            criterion_of[id] = row.criterion;
            // First `both` items valid for both; then r1-only, then r2-only.
            bool r1 = i < row.both || (i >= row.both && i < row.r1);
            bool r2 = i < row.both || (i >= row.r1 && i < row.r1 + (row.r2 - row.both));
            verdicts.push_back({id, "R1", r1, ""});
            verdicts.push_back({id, "R2", r2, ""});
        }
    }

    auto table = record_oversight(verdicts, criterion_of);
    CHECK(table.total.n == 35);
    CHECK(table.total.per_reviewer.at("R1") == 23);
    CHECK(table.total.per_reviewer.at("R2") == 25);
    CHECK(table.total.consensus == 22);
    for (const auto& row : table.rows) {
        for (const auto& want : spec_rows) {
            if (row.criterion != want.criterion) continue;
            CHECK(row.n == static_cast<size_t>(want.n));
            CHECK(row.per_reviewer.at("R1") == static_cast<size_t>(want.r1));
            CHECK(row.per_reviewer.at("R2") == static_cast<size_t>(want.r2));
            CHECK(row.consensus == static_cast<size_t>(want.both));
        }
    }
}

TEST_CASE("record_oversight guards verdict coverage") {
    std::map<std::string, std::string> criterion_of{{"p1", "story"}};
    try {
        (void)record_oversight({{"p1", "R1", true, ""}}, criterion_of);
        FAIL("expected insufficient_verdicts");
    } catch (const Error& e) {
        CHECK(e.code() == "insufficient_verdicts");
        CHECK(std::string(e.what()).find("p1") != std::string::npos);
    }
    try {
        (void)record_oversight({{"p1", "R1", true, ""}, {"p1", "R1", false, ""}},
                               criterion_of);
        FAIL("expected duplicate_verdict");
    } catch (const Error& e) {
        CHECK(e.code() == "duplicate_verdict");
    }

    SUBCASE("unanimous validity means consensus equals total") {
        std::map<std::string, std::string> crit;
        std::vector<OversightVerdict> verdicts;
        for (int i = 0; i < 9; ++i) {
            std::string id = "q" + std::to_string(i);
            crit[id] = kCriteria[static_cast<size_t>(i) % 5];
            verdicts.push_back({id, "R1", true, ""});
            verdicts.push_back({id, "R2", true, ""});
        }
        auto table = record_oversight(verdicts, crit);
        CHECK(table.total.consensus == 9);
        CHECK(table.total.n == 9);
    }
}

TEST_CASE("manifest: totals check and lossless round-trip") {
    std::vector<Perturbation> perts;
    const std::map<std::string, size_t> reference = {{"story", 153},
                                                     {"presentation", 173},
                                                     {"evaluations", 159},
                                                     {"correctness", 144},
                                                     {"significance", 154}};
    size_t counter = 0;
    for (const auto& [criterion, count] : reference) {
        for (size_t i = 0; i < count; ++i) {
            Perturbation p;
            p.perturbation_id = "pert-" + std::to_string(counter++);
            p.paper_id = "paper-" + std::to_string(counter % 120);
            p.criterion = criterion;
            p.subtype = "s";
            p.description = "d";
            p.target_file = "main.tex";
            p.line_start = 1;
            p.line_end = 1;
            p.original_span = "a";
            p.modified_span = "b";
            perts.push_back(std::move(p));
        }
    }
    auto manifest = build_manifest({}, std::move(perts), "venue-25", "gen-1", "2026-01-01T00:00:00Z");
    CHECK(manifest.total() == 783);
    CHECK(manifest.per_criterion.at("story") == 153);
    CHECK(manifest.per_criterion.at("presentation") == 173);
    CHECK(manifest.per_criterion.at("evaluations") == 159);
    CHECK(manifest.per_criterion.at("correctness") == 144);
    CHECK(manifest.per_criterion.at("significance") == 154);

    auto text = manifest_to_json(manifest);
    auto loaded = manifest_from_json(text);
    CHECK(loaded.total() == manifest.total());
    CHECK(loaded.per_criterion == manifest.per_criterion);
    CHECK(manifest_to_json(loaded) == text);  // lossless round-trip

    SUBCASE("empty manifest is fine") {
        auto empty = build_manifest({}, {});
        CHECK(empty.total() == 0);
        CHECK(manifest_from_json(manifest_to_json(empty)).total() == 0);
    }

    SUBCASE("tampered counts are rejected") {
        std::string tampered = text;
        auto pos = tampered.find("\"story\": 153");
        REQUIRE(pos != std::string::npos);
        tampered.replace(pos, 12, "\"story\": 152");
        try {
            (void)manifest_from_json(tampered);
            FAIL("expected count_mismatch");
        } catch (const Error& e) {
            CHECK(e.code() == "count_mismatch");
        }
    }
}

#include <doctest.h>

#include "reviewkit/gateway/fixture.hpp"
#include "reviewkit/review/citations.hpp"
#include "reviewkit/review/critic.hpp"
#include "reviewkit/review/oversight.hpp"
#include "reviewkit/review/review.hpp"
#include "reviewkit/util/csv.hpp"
#include "reviewkit/util/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace reviewkit;
using namespace reviewkit::review;

namespace {

const char* kFullReview =
    "# Solid Advances in Widget Learning\n"
    "\n"
    "## Synopsis\n"
    "The paper proposes a widget learner with two novel twists.\n"
    "\n"
    "## Summary\n"
    "A careful study; the claims mostly hold.\n"
    "\n"
    "## Strengths\n"
    "- Clear problem framing\n"
    "- Strong ablations\n"
    "\n"
    "## Weaknesses\n"
    "- Baseline coverage is thin\n"
    "- Missing error bars in Table 3\n"
    "\n"
    "## References\n"
    "- Doe, J., & Roe, R. (2021). Widget learning at scale. Journal of Widgets.\n"
    "- Poe, E. (2019). On gadgets. Gadget Conference.\n";

// Canonical renderings used by the exhaustive subset property.
std::string render_subset(unsigned mask) {
    std::ostringstream body;
    if (mask & (1u << 0)) body << "# A Title Line\n\n";
    if (mask & (1u << 1)) body << "## Synopsis\nshort synopsis text\n\n";
    if (mask & (1u << 2)) body << "## Summary\nsummary text\n\n";
    if (mask & (1u << 3)) body << "## Strengths\n- one strength\n\n";
    if (mask & (1u << 4)) body << "## Weaknesses\n- one weakness\n\n";
    if (mask & (1u << 5)) body << "## References\n- Doe, J. (2020). T. V.\n";
    return body.str();
}

} // namespace

TEST_CASE("validate_structure: full review has zero missing elements") {
    auto report = validate_structure(kFullReview);
    CHECK(report.valid());
    CHECK(report.missing.empty());
    for (const auto& v : report.elements) CHECK(v.present);
}

TEST_CASE("validate_structure: empty body misses all six") {
    auto report = validate_structure("");
    CHECK_FALSE(report.valid());
    CHECK(report.missing.size() == 6);
}

TEST_CASE("validate_structure: only references missing") {
    std::string body(kFullReview);
    size_t refs = body.find("## References");
    body.resize(refs);
    auto report = validate_structure(body);
    REQUIRE(report.missing.size() == 1);
    CHECK(report.missing[0] == Element::references);
}

TEST_CASE("validate_structure: heading synonyms are accepted") {
    std::string body =
        "# T\n\n## Synopsis\ns\n\n## Summary\nm\n\n## Strengths\n- s\n\n"
        "## Concerns\n- c\n\n## Citations\n- Doe, J. (2020). T. V.\n";
    auto report = validate_structure(body);
    CHECK(report.valid());
}

TEST_CASE("validate_structure: exhaustive 64-subset property") {
    for (unsigned mask = 0; mask < 64; ++mask) {
        auto report = validate_structure(render_subset(mask));
        for (size_t i = 0; i < kAllElements.size(); ++i) {
            bool expected_present = (mask >> i) & 1u;
            bool missing = std::find(report.missing.begin(), report.missing.end(),
                                     kAllElements[i]) != report.missing.end();
            INFO("mask=", mask, " element=", to_string(kAllElements[i]));
            CHECK(missing == !expected_present);
            CHECK(report.elements[i].present == expected_present);
        }
    }
}

TEST_CASE("parse_review extracts sections and lists") {
    auto review = parse_review("p1", kFullReview);
    CHECK(review.sections.title == "Solid Advances in Widget Learning");
    CHECK(review.sections.synopsis.find("widget learner") != std::string::npos);
    REQUIRE(review.sections.strengths.size() == 2);
    CHECK(review.sections.strengths[0] == "Clear problem framing");
    REQUIRE(review.sections.weaknesses.size() == 2);
    REQUIRE(review.sections.references.size() == 2);
    CHECK(review.sections.references[1] == "Poe, E. (2019). On gadgets. Gadget Conference.");
}

TEST_CASE("critic: scripted identity flag round-trips") {
    gateway::Gateway gw;
    gw.register_backend("critic",
                        gateway::FixtureBackend::from_json(R"({
        "responses": {"quality_critic": [
            {"text": "{\"review_issues\":[{\"issue\":\"identity_reveal\",\"rationale\":\"names the authors in line 2\"}],\"auxiliary\":{\"appears_llm_written\":\"no\",\"apparent_effort\":4,\"overall_quality\":3}}"}
        ]}
    })"));
    auto review = parse_review("p1", kFullReview);
    auto findings = run_quality_critic(review, gw, "critic");
    CHECK(findings.review_issues == std::set<ReviewIssue>{ReviewIssue::identity_reveal});
    CHECK(findings.editorial_concerns.empty());
    CHECK(findings.appears_llm_written == TriState::no);
    CHECK(findings.apparent_effort == 4);
    CHECK(findings.rationales.at("identity_reveal") ==
          "names the authors in line 2");
}

TEST_CASE("critic: clean output yields empty issue sets") {
    auto findings = parse_critic_output(
        R"({"review_issues":[],"editorial_concerns":[],
            "auxiliary":{"appears_llm_written":"yes","apparent_effort":2,"overall_quality":4}})");
    CHECK(findings.review_issues.empty());
    CHECK(findings.editorial_concerns.empty());
    CHECK(findings.appears_llm_written == TriState::yes);
    CHECK(findings.overall_quality == 4);
}

TEST_CASE("critic: out-of-taxonomy issue raises ParseFailure with raw preserved") {
    const std::string raw =
        R"({"review_issues":[{"issue":"too_spicy","rationale":"x"}]})";
    try {
        (void)parse_critic_output(raw);
        FAIL("expected ParseFailure");
    } catch (const ParseFailure& e) {
        CHECK(e.code() == "parse_failure");
        CHECK(e.raw() == raw);
    }

    CHECK_THROWS_AS((void)parse_critic_output("not json at all"), ParseFailure);
    // Flag without rationale is a taxonomy violation too.
    CHECK_THROWS_AS((void)parse_critic_output(
                        R"({"review_issues":[{"issue":"bias_concern"}]})"),
                    ParseFailure);
}

TEST_CASE("critic isolation: request contains only the review text") {
    auto review = parse_review("p1", kFullReview);
    auto request = build_critic_request(review);
    CHECK(request.attachments.empty());
    CHECK_FALSE(request.tools.code_execution);
    CHECK_FALSE(request.tools.web_search);
    REQUIRE(request.segments.size() == 2);
    CHECK(request.segments[1].text == review.body);

    // Nothing that smells like paper content or generation prompts.
    const std::string paper_markdown = "# Document p1\nContent of page 1 (digest abc).";
    for (const auto& seg : request.segments) {
        CHECK(seg.text.find(paper_markdown) == std::string::npos);
        CHECK(seg.text.find("machine-generated") == std::string::npos);
        CHECK(seg.text.find("generated by an AI") == std::string::npos);
    }
}

TEST_CASE("apa parsing: authors, year, title, venue") {
    auto c = parse_apa("Doe, J., & Roe, R. (2021). Widget learning at scale. Journal of Widgets.");
    CHECK(c.parsed_ok);
    CHECK(c.authors == "Doe, J., & Roe, R");
    CHECK(c.year == 2021);
    CHECK(c.title == "Widget learning at scale");
    CHECK(c.venue == "Journal of Widgets");

    auto bad = parse_apa("no year marker here");
    CHECK_FALSE(bad.parsed_ok);
}

TEST_CASE("citation audit: all-known index validates everything") {
    OfflineIndexResolver resolver({
        {"Doe, J., & Roe, R.", "Widget learning at scale", "Journal of Widgets", 2021},
        {"Poe, E.", "On gadgets", "Gadget Conference", 2019},
        {"Moe, M.", "Unrelated work", "Elsewhere", 2018},
    });
    Review review = parse_review("p1", kFullReview);
    auto audit = audit_citations(review, resolver);
    REQUIRE(audit.citations.size() == 2);
    CHECK(audit.count(Verdict::valid) == 2);
    CHECK(audit.count(Verdict::unsure) == 0);
    CHECK(audit.count(Verdict::fake) == 0);
}

TEST_CASE("citation audit: venue mismatch is fake with explicit evidence") {
    OfflineIndexResolver resolver({
        {"Doe, J., & Roe, R.", "Widget learning at scale", "Widget Letters", 2021},
    });
    Review review;
    review.sections.references = {
        "Doe, J., & Roe, R. (2021). Widget learning at scale. Journal of Widgets."};
    auto audit = audit_citations(review, resolver);
    REQUIRE(audit.citations.size() == 1);
    CHECK(audit.citations[0].verdict == Verdict::fake);
    CHECK(audit.citations[0].evidence.find("venue mismatch") != std::string::npos);
    CHECK(audit.citations[0].evidence.find("Widget Letters") != std::string::npos);
}

TEST_CASE("citation audit: unknown and low-confidence works") {
    OfflineIndexResolver resolver({
        {"Smith, A., Jones, B., Brown, C., Davis, D.", "Deep things", "Venue A", 2020},
    });
    Review review;
    review.sections.references = {
        "Nobody, N. (2001). Completely absent. Nowhere.",        // no match -> fake
        "Smith, A. (2020). Deep things. Venue A.",               // partial authors -> unsure
    };
    auto audit = audit_citations(review, resolver);
    REQUIRE(audit.citations.size() == 2);
    CHECK(audit.citations[0].verdict == Verdict::fake);
    CHECK(audit.citations[1].verdict == Verdict::unsure);
}

TEST_CASE("citation audit: conservation over random fixtures") {
    std::mt19937_64 rng(97);
    OfflineIndexResolver resolver({
        {"Doe, J.", "Known paper alpha", "Venue A", 2020},
        {"Roe, R.", "Known paper beta", "Venue B", 2021},
    });
    for (int trial = 0; trial < 60; ++trial) {
        Review review;
        size_t n = rng() % 12;
        for (size_t i = 0; i < n; ++i) {
            switch (rng() % 4) {
            case 0: review.sections.references.push_back(
                        "Doe, J. (2020). Known paper alpha. Venue A."); break;
            case 1: review.sections.references.push_back(
                        "Doe, J. (2020). Known paper alpha. Wrong Venue."); break;
            case 2: review.sections.references.push_back(
                        "Zed, Z. (1999). Mystery item. Unknown venue."); break;
            case 3: review.sections.references.push_back("garbled line, no year"); break;
            }
        }
        auto audit = audit_citations(review, resolver);
        CHECK(audit.count(Verdict::valid) + audit.count(Verdict::unsure) +
                  audit.count(Verdict::fake) ==
              audit.citations.size());
        CHECK(audit.citations.size() == n);
    }
}

TEST_CASE("oversight report: flagged rows lead, ordering deterministic") {
    OversightEntry clean1{"paper-b", {}, {}};
    OversightEntry clean2{"paper-a", {}, {}};
    OversightEntry flagged{"paper-z", {}, {}};
    flagged.findings.review_issues.insert(ReviewIssue::identity_reveal);
    flagged.findings.rationales["identity_reveal"] = "ack section names the lab";

    auto report = compile_oversight_report({clean1, clean2, flagged});
    CHECK(report.total == 3);
    CHECK(report.flagged_count == 1);

    auto rows = csv::parse(report.csv);
    REQUIRE(rows.size() == 4);  // header + 3
    CHECK(rows[1][0] == "paper-z");  // flagged first
    CHECK(rows[2][0] == "paper-a");  // then id-ascending
    CHECK(rows[3][0] == "paper-b");

    SUBCASE("zero reviews produce a header-only report") {
        auto empty = compile_oversight_report({});
        auto only_header = csv::parse(empty.csv);
        CHECK(only_header.size() == 1);
        CHECK(empty.total == 0);
    }

    SUBCASE("flag counts equal input tallies on a larger batch") {
        std::vector<OversightEntry> entries;
        size_t expected_flagged = 0;
        for (int i = 0; i < 100; ++i) {
            OversightEntry e;
            e.paper_id = "p" + std::to_string(1000 + i);
            if (i % 3 == 0) {
                e.findings.editorial_concerns.insert(EditorialConcern::policy_violation);
                e.findings.rationales["policy_violation"] = "margin violation";
                ++expected_flagged;
            }
            entries.push_back(std::move(e));
        }
        auto big = compile_oversight_report(entries);
        CHECK(big.total == 100);
        CHECK(big.flagged_count == expected_flagged);
        CHECK(csv::parse(big.csv).size() == 101);
    }
}

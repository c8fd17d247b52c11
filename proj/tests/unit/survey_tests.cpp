#include <doctest.h>

#include "reviewkit/survey/likert.hpp"
#include "reviewkit/survey/mann_whitney.hpp"
#include "reviewkit/survey/report.hpp"
#include "reviewkit/util/error.hpp"

#include "support/oracles.hpp"

#include <random>

using namespace reviewkit;
using namespace reviewkit::survey;

namespace {

ResponseSet rs(std::vector<int> values, std::string item = "q1") {
    ResponseSet r;
    r.item_id = std::move(item);
    r.values = std::move(values);
    return r;
}

} // namespace

TEST_CASE("mean: symmetric pair, hand value, empty") {
    CHECK(mean(rs({1, -1})) == Rational(0));
    CHECK(mean(rs({2, 2, 1})) == Rational(5, 3));
    CHECK(mean(rs({2, 2, 1})).to_decimal(4) == "1.6667");
    CHECK_THROWS_AS((void)mean(rs({})), Error);
}

TEST_CASE("pooled_mean: symmetry, weighting, degenerate group") {
    CHECK(pooled_mean({rs({1, 1}), rs({-1, -1})}) == Rational(0));
    // sizes (3,1), means (1,-1) -> (3*1 + 1*(-1)) / 4 = 0.5
    CHECK(pooled_mean({rs({1, 1, 1}), rs({-1})}) == Rational(1, 2));
    CHECK(pooled_mean({rs({2, 0, 1})}) == mean(rs({2, 0, 1})));
    CHECK_THROWS_AS((void)pooled_mean({rs({1}), rs({})}), Error);
}

TEST_CASE("pooling identity: pooled mean equals mean of concatenation") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> value(-2, 2);
    std::uniform_int_distribution<size_t> size(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ResponseSet> groups;
        ResponseSet all;
        all.item_id = "q1";
        size_t n_groups = 1 + (rng() % 5);
        for (size_t g = 0; g < n_groups; ++g) {
            ResponseSet part;
            part.item_id = "q1";
            size_t n = size(rng);
            for (size_t i = 0; i < n; ++i) {
                int v = value(rng);
                part.values.push_back(v);
                all.values.push_back(v);
            }
            groups.push_back(std::move(part));
        }
        CHECK(pooled_mean(groups) == mean(all));
    }
}

TEST_CASE("diff_means: identity, sign convention, antisymmetry, item guard") {
    CHECK(diff_means(rs({1, 0, -1}), rs({1, 0, -1})) == Rational(0));
    CHECK(diff_means(rs({1, 1}), rs({0, 0})) == Rational(1));

    // Synthetic fixture shaped like a +0.67 headline delta:
    // ai mean 0.30 over 100, human mean -0.37 over 100.
    ResponseSet ai100, human100;
    ai100.item_id = human100.item_id = "q1";
    ai100.values.assign(70, 0);
    ai100.values.insert(ai100.values.end(), 30, 1);
    human100.values.assign(63, 0);
    human100.values.insert(human100.values.end(), 37, -1);
    CHECK(diff_means(ai100, human100) == Rational(67, 100));
    CHECK(diff_means(human100, ai100) == -diff_means(ai100, human100));

    ResponseSet other = rs({1}, "q2");
    CHECK_THROWS_AS((void)diff_means(rs({1}), other), Error);
}

TEST_CASE("agreement_fractions partitions the collection") {
    auto f = agreement_fractions(rs({0, 0, 0}));
    CHECK(f.agree == Rational(0));
    CHECK(f.disagree == Rational(0));
    CHECK(f.neutral == Rational(1));

    f = agreement_fractions(rs({2, 1, 0, -1}));
    CHECK(f.agree == Rational(1, 2));
    CHECK(f.disagree == Rational(1, 4));
    CHECK(f.neutral == Rational(1, 4));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> value(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        ResponseSet r;
        r.item_id = "q";
        size_t n = 1 + (rng() % 60);
        for (size_t i = 0; i < n; ++i) r.values.push_back(value(rng));
        auto fr = agreement_fractions(r);
        CHECK(fr.agree + fr.disagree + fr.neutral == Rational(1));
    }
}

TEST_CASE("mann-whitney: fully separated, fully tied, null case") {
    auto sep = mann_whitney_u({2, 2, 2}, {-2, -2, -2});
    CHECK(sep.u == doctest::Approx(9.0));
    CHECK(sep.exact);
    CHECK(sep.p_two_sided == doctest::Approx(0.1).epsilon(1e-12));  // 2 / C(6,3)

    auto tied = mann_whitney_u({1}, {1});
    CHECK(tied.u == doctest::Approx(0.5));
    CHECK(tied.p_two_sided == doctest::Approx(1.0));

    std::vector<int> same = {2, 1, 1, 0, -1, 0, 2, -2};
    auto null_case = mann_whitney_u(same, same);
    CHECK(null_case.p_two_sided >= 0.99);

    CHECK_THROWS_AS((void)mann_whitney_u({}, {1}), Error);
}

TEST_CASE("mann-whitney exact path matches the permutation oracle") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> value(-2, 2);
    int trials_done = 0;
    while (trials_done < 100) {
        size_t n1 = 1 + (rng() % 8);
        size_t n2 = 1 + (rng() % 8);
        if (n1 + n2 > 10) continue;
        ++trials_done;
        std::vector<int> a(n1), b(n2);
        for (auto& v : a) v = value(rng);
        for (auto& v : b) v = value(rng);

        auto got = mann_whitney_u(a, b, MwMethod::exact);
        CHECK(got.u == doctest::Approx(oracles::mw_u_pairwise(a, b)).epsilon(1e-12));
        CHECK(got.p_two_sided == doctest::Approx(oracles::mw_exact_p(a, b)).epsilon(1e-9));
    }
}

// Calibration across the exact/approximate crossover: on random Likert
// null data with pooled size 10..14, the two paths must reject at rates
// within 0.02 of each other. Per-trial |dp| cannot be bounded that
// tightly: the exact p lives on a lattice whose central atoms are wider
// than 0.02, so any continuous approximation misses individual draws.
TEST_CASE("mann-whitney exact and approximate calibrate on mid-size likert data") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> value(-2, 2);
    const int trials = 2000;
    int reject_exact_01 = 0, reject_approx_01 = 0;
    int reject_exact_05 = 0, reject_approx_05 = 0;
    for (int trial = 0; trial < trials; ++trial) {
        size_t n = 10 + (rng() % 5);  // 10..14 pooled
        size_t n1 = 3 + (rng() % (n - 5));
        std::vector<int> a(n1), b(n - n1);
        for (auto& v : a) v = value(rng);
        for (auto& v : b) v = value(rng);
        auto ex = mann_whitney_u(a, b, MwMethod::exact);
        auto ap = mann_whitney_u(a, b, MwMethod::normal_approx);
        if (ex.p_two_sided <= 0.01) ++reject_exact_01;
        if (ap.p_two_sided <= 0.01) ++reject_approx_01;
        if (ex.p_two_sided <= 0.05) ++reject_exact_05;
        if (ap.p_two_sided <= 0.05) ++reject_approx_05;
    }
    auto rate = [&](int k) { return static_cast<double>(k) / trials; };
    CHECK(std::abs(rate(reject_exact_01) - rate(reject_approx_01)) <= 0.02);
    CHECK(std::abs(rate(reject_exact_05) - rate(reject_approx_05)) <= 0.02);
}

TEST_CASE("translation equivariance: shifting values moves mean, keeps p") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> value(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n1 = 2 + (rng() % 5), n2 = 2 + (rng() % 5);
        std::vector<int> a(n1), b(n2);
        for (auto& v : a) v = value(rng);
        for (auto& v : b) v = value(rng);

        ResponseSet ra = rs(a), rb = rs(b);
        const int k = 3;
        ResponseSet ra_shift = ra, rb_shift = rb;
        for (auto& v : ra_shift.values) v += k;
        for (auto& v : rb_shift.values) v += k;

        CHECK(mean(ra_shift) == mean(ra) + Rational(k));
        auto p0 = mann_whitney_u(ra.values, rb.values).p_two_sided;
        auto p1 = mann_whitney_u(ra_shift.values, rb_shift.values).p_two_sided;
        CHECK(p0 == doctest::Approx(p1).epsilon(1e-12));
    }
}

TEST_CASE("comparison_report composes the per-item statistics") {
    ItemResponses q1{"q1", rs({2, 1, 1}, "q1"), rs({0, 0, -1}, "q1")};
    ItemResponses q2{"q2", rs({0, 0}, "q2"), rs({1, 1}, "q2")};
    auto results = comparison_report({q1, q2});
    REQUIRE(results.size() == 2);
    CHECK(results[0].item_id == "q1");
    CHECK(results[1].item_id == "q2");
    CHECK(results[0].delta == diff_means(q1.ai, q1.human));
    auto mw = mann_whitney_u(q1.ai.values, q1.human.values);
    CHECK(results[0].u_statistic == doctest::Approx(mw.u));
    CHECK(results[0].p_value == doctest::Approx(mw.p_two_sided));
    CHECK(comparison_report({}).empty());
}

TEST_CASE("load_responses_csv groups rows and rejects bad values") {
    const std::string text =
        "role,review_type,item_id,value\r\n"
        "author,AI,q1,2\r\n"
        "PC,AI,q1,1\r\n"
        "author,human,q1,-1\r\n"
        "SPC,human,q1,0\r\n"
        "author,AI,q2,0\r\n"
        "AC,human,q2,1\r\n";
    auto items = load_responses_csv(text);
    REQUIRE(items.size() == 2);
    CHECK(items[0].item_id == "q1");
    CHECK(items[0].ai.values == std::vector<int>{2, 1});
    CHECK(items[0].human.values == std::vector<int>{-1, 0});
    CHECK(items[1].ai.values == std::vector<int>{0});

    CHECK_THROWS_WITH_AS((void)load_responses_csv("role,review_type,item_id,value\nauthor,AI,q1,3\n"),
                         doctest::Contains("row 2"), Error);
    CHECK_THROWS_AS((void)load_responses_csv("author,AI,q1,notanumber\n"), Error);
}

#include <doctest.h>

#include "reviewkit/gateway/fixture.hpp"
#include "reviewkit/gateway/gateway.hpp"
#include "reviewkit/gateway/retry.hpp"
#include "reviewkit/util/error.hpp"

#include <atomic>
#include <thread>

using namespace reviewkit;
using namespace reviewkit::gateway;

namespace {

ModelRequest simple_request(std::string tag = "stage") {
    ModelRequest req;
    req.tag = std::move(tag);
    req.segments = {{SegmentRole::system, "base"}, {SegmentRole::user, "do the thing"}};
    return req;
}

Script failures_then_success(int failures) {
    std::vector<ScriptEntry> entries;
    for (int i = 0; i < failures; ++i) {
        entries.push_back(ScriptEntry::fail_transient("rate limited"));
    }
    entries.push_back(ScriptEntry::respond("ok"));
    return {{"stage", std::move(entries)}};
}

} // namespace

TEST_CASE("invoke succeeds after scripted transient failures") {
    FixtureBackend backend(failures_then_success(2));
    RetryPolicy policy;  // max_retries 5, base 1s, factor 2
    RecordingSleeper sleeper;
    auto response = invoke(simple_request(), backend, policy, sleeper);
    CHECK(response.text == "ok");
    CHECK(response.attempts == 3);
    auto waits = sleeper.recorded();
    REQUIRE(waits.size() == 2);
    CHECK(waits[0] == std::chrono::milliseconds(1000));
    CHECK(waits[1] == std::chrono::milliseconds(2000));
}

TEST_CASE("invoke exhausts the retry budget") {
    FixtureBackend backend(failures_then_success(6));
    RetryPolicy policy;
    RecordingSleeper sleeper;
    try {
        (void)invoke(simple_request(), backend, policy, sleeper);
        FAIL("expected exhausted_retries");
    } catch (const Error& e) {
        CHECK(e.code() == "exhausted_retries");
        CHECK(std::string(e.what()).find("rate limited") != std::string::npos);
    }
    CHECK(sleeper.recorded().size() == 5);
    CHECK(backend.call_count() == 6);
}

TEST_CASE("attempts = k+1 for every k below the retry budget") {
    for (int k = 0; k <= 5; ++k) {
        FixtureBackend backend(failures_then_success(k));
        RetryPolicy policy;
        RecordingSleeper sleeper;
        if (k <= 5) {
            auto response = invoke(simple_request(), backend, policy, sleeper);
            CHECK(response.attempts == k + 1);
            CHECK(sleeper.recorded().size() == static_cast<size_t>(k));
        }
    }
}

TEST_CASE("zero-jitter delay plan is the closed-form geometric sequence") {
    RetryPolicy policy;
    auto delays = policy.planned_delays();
    REQUIRE(delays.size() == 5);
    using std::chrono::milliseconds;
    CHECK(delays == std::vector<milliseconds>{milliseconds(1000), milliseconds(2000),
                                              milliseconds(4000), milliseconds(8000),
                                              milliseconds(16000)});

    SUBCASE("recorded waits are non-decreasing when jitter is zero") {
        FixtureBackend backend(failures_then_success(5));
        RecordingSleeper sleeper;
        (void)invoke(simple_request(), backend, policy, sleeper);
        auto waits = sleeper.recorded();
        for (size_t i = 1; i < waits.size(); ++i) CHECK(waits[i] >= waits[i - 1]);
    }
}

TEST_CASE("fatal backend errors are not retried") {
    Script script{{"stage", {ScriptEntry::fail_fatal("bad credentials")}}};
    FixtureBackend backend(script);
    RetryPolicy policy;
    RecordingSleeper sleeper;
    CHECK_THROWS_WITH_AS((void)invoke(simple_request(), backend, policy, sleeper),
                         "bad credentials", Error);
    CHECK(backend.call_count() == 1);
    CHECK(sleeper.recorded().empty());
}

TEST_CASE("requests that exceed the declared window are rejected up front") {
    FixtureBackend backend(failures_then_success(0), /*context_window=*/16);
    RetryPolicy policy;
    RecordingSleeper sleeper;
    auto req = simple_request();
    req.segments[1].text = std::string(4096, 'x');
    try {
        (void)invoke(req, backend, policy, sleeper);
        FAIL("expected request_too_large");
    } catch (const Error& e) {
        CHECK(e.code() == "request_too_large");
    }
    CHECK(backend.call_count() == 0);
}

TEST_CASE("backend observes the caller's request unchanged") {
    FixtureBackend backend(failures_then_success(0));
    RetryPolicy policy;
    RecordingSleeper sleeper;
    auto req = simple_request();
    req.tools.code_execution = true;
    req.attachments = {{AttachmentKind::pdf, "paper-1"}};
    (void)invoke(req, backend, policy, sleeper);
    auto seen = backend.observed_requests();
    REQUIRE(seen.size() == 1);
    CHECK(seen[0] == req);
}

TEST_CASE("fixture scripts serve in order and exhaust per key") {
    Script script{{"stage", {ScriptEntry::respond("first"), ScriptEntry::respond("second")}}};
    FixtureBackend backend(script);
    CHECK(backend.complete(simple_request()).text == "first");
    CHECK(backend.complete(simple_request()).text == "second");
    try {
        (void)backend.complete(simple_request());
        FAIL("expected script_exhausted");
    } catch (const Error& e) {
        CHECK(e.code() == "script_exhausted");
    }
}

TEST_CASE("fixture falls back to the wildcard key") {
    Script script{{"*", {ScriptEntry::respond("generic")}}};
    FixtureBackend backend(script);
    CHECK(backend.complete(simple_request("anything")).text == "generic");
}

TEST_CASE("fixture manifest parses from json") {
    const std::string manifest = R"({
        "context_window_tokens": 1000,
        "responses": {
            "story": [{"text": "story response"},
                      {"fail": "transient", "message": "hiccup"}],
            "*": [{"text": "fallback",
                   "tool_traces": [{"kind": "code_execution", "input": "1+1", "output": "2"}]}]
        }
    })";
    auto backend = FixtureBackend::from_json(manifest);
    CHECK(backend->context_window_tokens() == 1000);
    CHECK(backend->complete(simple_request("story")).text == "story response");
    CHECK_THROWS_AS((void)backend->complete(simple_request("story")), TransientError);
    auto out = backend->complete(simple_request("other"));
    CHECK(out.text == "fallback");
    REQUIRE(out.tool_traces.size() == 1);
    CHECK(out.tool_traces[0].kind == "code_execution");
}

TEST_CASE("registry resolves, rejects duplicates and unknown ids") {
    Gateway gw;
    auto backend = std::make_shared<FixtureBackend>(failures_then_success(0));
    gw.register_backend("fixture", backend);
    CHECK(gw.resolve("fixture") == backend);
    try {
        gw.register_backend("fixture", backend);
        FAIL("expected duplicate_backend");
    } catch (const Error& e) {
        CHECK(e.code() == "duplicate_backend");
    }
    try {
        (void)gw.resolve("nope");
        FAIL("expected unknown_backend");
    } catch (const Error& e) {
        CHECK(e.code() == "unknown_backend");
    }
}

TEST_CASE("concurrency limiter caps in-flight requests") {
    ConcurrencyLimiter limiter(2);
    std::atomic<int> active{0};
    std::atomic<int> peak{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&] {
            limiter.acquire();
            int now = ++active;
            int prev = peak.load();
            while (now > prev && !peak.compare_exchange_weak(prev, now)) {}
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
            --active;
            limiter.release();
        });
    }
    for (auto& t : threads) t.join();
    CHECK(peak.load() <= 2);
    CHECK(limiter.in_flight() == 0);
}

TEST_CASE("jittered waits stay monotonically non-decreasing") {
    Script script;
    std::vector<ScriptEntry> entries(5, ScriptEntry::fail_transient("x"));
    entries.push_back(ScriptEntry::respond("ok"));
    script["stage"] = entries;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        FixtureBackend backend(script);
        RetryPolicy policy;
        policy.jitter = 0.5;
        policy.jitter_seed = seed;
        RecordingSleeper sleeper;
        (void)invoke(simple_request(), backend, policy, sleeper);
        auto waits = sleeper.recorded();
        REQUIRE(waits.size() == 5);
        for (size_t i = 1; i < waits.size(); ++i) CHECK(waits[i] >= waits[i - 1]);
    }
}

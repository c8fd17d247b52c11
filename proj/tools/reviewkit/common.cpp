#include "common.hpp"

#include "reviewkit/gateway/fixture.hpp"
#include "reviewkit/gateway/http_backend.hpp"
#include "reviewkit/gateway/mock.hpp"

#include <csignal>
#include <iostream>

namespace rkcli {

using namespace reviewkit;

std::atomic<bool>& interrupt_flag() {
    static std::atomic<bool> flag{false};
    return flag;
}

namespace {
void on_signal(int) { interrupt_flag().store(true); }
} // namespace

void install_signal_handlers() {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
}

Context make_context(const ContextOptions& options) {
    Context ctx;
    if (!options.config_path.empty()) {
        ctx.config = cfg::Config::load_file(options.config_path);
    }
    ctx.mock = options.mock;
    ctx.seed = options.seed;
    ctx.prompts = engine::PromptRegistry::with_defaults();

    // Deterministic clock in mock mode so reruns are byte-identical.
    if (ctx.mock) {
        ctx.clock = std::make_shared<FixedStepClock>();
    } else {
        ctx.clock = std::make_shared<SystemClock>();
    }

    gateway::GatewayOptions gw_options;
    gw_options.max_in_flight =
        static_cast<int>(ctx.config.get_int("gateway.max_in_flight", 8));
    gw_options.retry.max_retries =
        static_cast<int>(ctx.config.get_int("gateway.max_retries", 5));
    gw_options.retry.jitter_seed = options.seed;
    std::shared_ptr<Sleeper> sleeper;
    if (ctx.mock) {
        sleeper = std::make_shared<RecordingSleeper>();  // no real waiting offline
    } else {
        sleeper = std::make_shared<RealSleeper>();
    }
    ctx.gateway = std::make_unique<gateway::Gateway>(gw_options, sleeper);

    if (!options.needs_backend) {
        ctx.ocr = std::make_unique<ingest::FixtureOcr>();
        return ctx;
    }
    if (ctx.mock) {
        if (!options.mock_script.empty()) {
            ctx.gateway->register_backend(
                ctx.backend_id, gateway::FixtureBackend::from_json_file(options.mock_script));
        } else {
            ctx.gateway->register_backend(ctx.backend_id,
                                          std::make_shared<gateway::MockBackend>());
        }
        ctx.ocr = std::make_unique<ingest::FixtureOcr>();
    } else {
        auto backend_options = gateway::HttpBackend::options_from_env();
        backend_options.model = ctx.config.get("gateway.model", "");
        ctx.gateway->register_backend(
            ctx.backend_id, std::make_shared<gateway::HttpBackend>(backend_options));

        const std::string ocr_backend = ctx.config.get("ingest.ocr_backend", "fixture");
        if (ocr_backend == "fixture") {
            ctx.ocr = std::make_unique<ingest::FixtureOcr>();
        } else {
            ctx.ocr = std::make_unique<ingest::HttpOcr>(ocr_backend);
        }
    }
    return ctx;
}

int fail(const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    const std::string code = e.code();
    const std::string what = e.what();
    if (code == "interrupted") return kInterrupted;
    if (code == "exhausted_retries") return kBackendExhausted;
    if (code == "stage_failed") {
        if (what.find("[exhausted_retries]") != std::string::npos) return kBackendExhausted;
        if (what.find("[interrupted]") != std::string::npos) return kInterrupted;
        return kBackendExhausted;
    }
    if (code == "toolchain_missing") return kToolchainMissing;
    return kInputError;
}

curation::CompileOptions resolve_compile_options(const Context& ctx,
                                                 const std::string& flag_value) {
    curation::CompileOptions options;
    std::string command = flag_value;
    if (command.empty()) {
        if (const char* env = std::getenv("SPECS_COMPILE_CMD"); env && *env) command = env;
    }
    if (command.empty()) {
        command = ctx.config.get("curation.compile_cmd", "");
    }
    if (command.empty()) {
        command = "pdflatex -interaction=nonstopmode";
    }
    options.command.clear();
    std::string current;
    for (char c : command) {
        if (c == ' ') {
            if (!current.empty()) options.command.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) options.command.push_back(current);
    options.timeout = std::chrono::milliseconds(
        ctx.config.get_int("curation.compile_timeout_ms", 120000));
    return options;
}

} // namespace rkcli

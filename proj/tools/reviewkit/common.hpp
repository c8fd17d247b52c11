#pragma once

#include "reviewkit/cfg/config.hpp"
#include "reviewkit/curation/compile_gate.hpp"
#include "reviewkit/engine/plan.hpp"
#include "reviewkit/gateway/gateway.hpp"
#include "reviewkit/ingest/ocr.hpp"
#include "reviewkit/util/clock.hpp"

#include <atomic>
#include <memory>

namespace rkcli {

// Exit codes shared across subcommands.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kBackendExhausted = 3;
inline constexpr int kInterrupted = 4;
inline constexpr int kToolchainMissing = 5;

std::atomic<bool>& interrupt_flag();
void install_signal_handlers();

// Everything a subcommand needs: effective config, the gateway with the
// "default" backend registered, a clock (deterministic in mock mode) and
// the OCR backend.
struct Context {
    reviewkit::cfg::Config config;
    bool mock = false;
    uint64_t seed = 0;
    std::string backend_id = "default";
    std::shared_ptr<reviewkit::Clock> clock;
    std::unique_ptr<reviewkit::gateway::Gateway> gateway;
    std::unique_ptr<reviewkit::ingest::OcrBackend> ocr;
    reviewkit::engine::PromptRegistry prompts;
};

struct ContextOptions {
    std::string config_path;
    bool mock = false;
    std::string mock_script;  // optional fixture script JSON
    uint64_t seed = 0;
    int workers = 0;           // 0 = config/default
    bool needs_backend = true; // pure-arithmetic commands skip the gateway
};

Context make_context(const ContextOptions& options);

// Maps a domain error onto the documented exit codes and prints the
// message to stderr.
int fail(const reviewkit::Error& e);

reviewkit::curation::CompileOptions resolve_compile_options(const Context& ctx,
                                                            const std::string& flag_value);

} // namespace rkcli

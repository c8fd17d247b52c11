#pragma once

#include "reviewkit/curation/types.hpp"

#include <chrono>

namespace reviewkit::curation {

struct CompileOptions {
    // Toolchain argv; the root document path is appended. Default probes
    // SPECS_COMPILE_CMD, then pdflatex.
    std::vector<std::string> command;
    std::chrono::milliseconds timeout{120000};

    static CompileOptions from_environment();
};

struct CompileResult {
    bool ok = false;
    bool timed_out = false;
    std::string log_excerpt;         // tail of the toolchain output
    std::filesystem::path pdf_path;  // produced document, when ok
};

// Finds the root .tex (main.tex, else the one with \documentclass).
// Error("no_root_document") when none qualifies.
std::filesystem::path find_root_document(const std::filesystem::path& tree);

// ok iff the toolchain exits 0 within the timeout AND a PDF appears next
// to the root document. Timeouts are reported as failed, never thrown.
CompileResult verify_compiles(const std::filesystem::path& tree, const CompileOptions& options);

} // namespace reviewkit::curation

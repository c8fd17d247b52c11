#include "reviewkit/curation/compile_gate.hpp"

#include "reviewkit/util/error.hpp"
#include "reviewkit/util/fs.hpp"
#include "reviewkit/util/subprocess.hpp"

#include <cstdlib>

namespace reviewkit::curation {

CompileOptions CompileOptions::from_environment() {
    CompileOptions options;
    if (const char* cmd = std::getenv("SPECS_COMPILE_CMD"); cmd && *cmd) {
        std::string raw(cmd);
        std::string current;
        for (char c : raw) {
            if (c == ' ') {
                if (!current.empty()) options.command.push_back(current);
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty()) options.command.push_back(current);
    } else {
        options.command = {"pdflatex", "-interaction=nonstopmode"};
    }
    return options;
}

std::filesystem::path find_root_document(const std::filesystem::path& tree) {
    const auto main_tex = tree / "main.tex";
    if (std::filesystem::exists(main_tex)) return main_tex;

    std::filesystem::path candidate;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(tree)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".tex") continue;
        const std::string text = fs::read_text(entry.path());
        if (text.find("\\documentclass") != std::string::npos) {
            if (!candidate.empty()) {
                // Two roots: prefer the shallower, then lexicographic.
                if (entry.path().string().size() < candidate.string().size()) {
                    candidate = entry.path();
                }
            } else {
                candidate = entry.path();
            }
        }
    }
    if (candidate.empty()) {
        throw Error("no_root_document", "no .tex with \\documentclass under " + tree.string());
    }
    return candidate;
}

CompileResult verify_compiles(const std::filesystem::path& tree, const CompileOptions& options) {
    CompileResult result;
    if (options.command.empty()) {
        throw Error("toolchain_missing", "compile command is empty");
    }
    if (!proc::command_exists(options.command[0])) {
        throw Error("toolchain_missing",
                    "typesetting toolchain '" + options.command[0] + "' not found on PATH");
    }

    const auto root = find_root_document(tree);
    const auto expected_pdf = root.parent_path() / (root.stem().string() + ".pdf");
    std::error_code ec;
    std::filesystem::remove(expected_pdf, ec);

    std::vector<std::string> argv = options.command;
    argv.push_back(root.filename().string());
    auto run = proc::run(argv, root.parent_path(), options.timeout);

    const size_t kExcerpt = 2048;
    result.log_excerpt = run.output.size() > kExcerpt
                             ? run.output.substr(run.output.size() - kExcerpt)
                             : run.output;
    result.timed_out = run.timed_out;
    if (run.timed_out) {
        result.ok = false;
        result.log_excerpt += "\n[toolchain killed: exceeded " +
                              std::to_string(options.timeout.count()) + " ms]";
        return result;
    }
    result.ok = run.exit_code == 0 && std::filesystem::exists(expected_pdf);
    if (result.ok) {
        result.pdf_path = expected_pdf;
    } else if (run.exit_code == 0) {
        result.log_excerpt += "\n[toolchain exited 0 but produced no PDF]";
    }
    return result;
}

} // namespace reviewkit::curation

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace reviewkit {

// Base for all domain errors. `code` is a stable machine-readable tag
// (e.g. "malformed_pdf", "exhausted_retries") used by the CLI to map
// failures onto exit codes and by tests to assert on failure kinds.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace reviewkit

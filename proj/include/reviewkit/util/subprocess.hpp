#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace reviewkit::proc {

struct RunResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output;  // stdout and stderr merged
};

// fork/exec with merged output capture; the process group is killed on
// timeout. argv[0] is resolved via PATH.
RunResult run(const std::vector<std::string>& argv,
              const std::filesystem::path& workdir,
              std::chrono::milliseconds timeout);

bool command_exists(const std::string& name);

} // namespace reviewkit::proc

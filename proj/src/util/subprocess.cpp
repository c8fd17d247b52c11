#include "reviewkit/util/subprocess.hpp"

#include "reviewkit/util/error.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

namespace reviewkit::proc {

RunResult run(const std::vector<std::string>& argv,
              const std::filesystem::path& workdir,
              std::chrono::milliseconds timeout) {
    if (argv.empty()) throw Error("subprocess", "empty argv");

    int pipefd[2];
    if (pipe(pipefd) != 0) throw Error("subprocess", "pipe failed");

    pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw Error("subprocess", "fork failed");
    }

    if (pid == 0) {
        setpgid(0, 0);
        close(pipefd[0]);
        dup2(pipefd[1], STDOUT_FILENO);
        dup2(pipefd[1], STDERR_FILENO);
        close(pipefd[1]);
        if (!workdir.empty() && chdir(workdir.c_str()) != 0) _exit(127);

        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        _exit(127);
    }

    close(pipefd[1]);
    RunResult result;
    auto deadline = std::chrono::steady_clock::now() + timeout;

    char buf[4096];
    bool open = true;
    while (open) {
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            result.timed_out = true;
            kill(-pid, SIGKILL);
        }
        struct pollfd pfd{pipefd[0], POLLIN, 0};
        int timeout_ms = result.timed_out ? 1000 : static_cast<int>(remaining.count());
        int rc = poll(&pfd, 1, timeout_ms < 1 ? 1 : timeout_ms);
        if (rc > 0) {
            ssize_t n = read(pipefd[0], buf, sizeof(buf));
            if (n > 0) {
                result.output.append(buf, static_cast<size_t>(n));
            } else {
                open = false;
            }
        } else if (rc == 0 && result.timed_out) {
            open = false;  // child killed but pipe held open elsewhere; stop reading
        }
    }
    close(pipefd[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (result.timed_out) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = -1;
    }
    return result;
}

bool command_exists(const std::string& name) {
    if (name.find('/') != std::string::npos) {
        return access(name.c_str(), X_OK) == 0;
    }
    const char* path_env = std::getenv("PATH");
    if (!path_env) return false;
    std::string path(path_env);
    size_t start = 0;
    while (start <= path.size()) {
        size_t pos = path.find(':', start);
        std::string dir = path.substr(start, pos == std::string::npos ? std::string::npos
                                                                      : pos - start);
        if (!dir.empty()) {
            std::string candidate = dir + "/" + name;
            if (access(candidate.c_str(), X_OK) == 0) return true;
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return false;
}

} // namespace reviewkit::proc

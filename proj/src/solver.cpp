/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/solver.hpp"

#include "chcelim/smt2.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace chcelim {

std::string toString(SolveStatus s) {
    switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::SolverError: return "solver-error";
    }
    return "solver-error";
}

namespace {

std::vector<std::string> splitTemplate(const std::string & s) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (char c : s) {
        if (quote) {
            if (c == quote) quote = 0;
            else cur += c;
        } else if (c == '\'' || c == '"') {
            quote = c;
            have = true;
        } else if (c == ' ' || c == '\t' || c == '\n') {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (quote) throw std::invalid_argument("unterminated quote in solver command: " + s);
    if (have) out.push_back(cur);
    return out;
}

struct ProcessResult {
    bool launched = false;
    bool timedOut = false;
    int exitCode = -1;
    int signal = 0;
    std::string out;
    std::string err;
    std::string launchError;
};

ProcessResult runProcess(const std::vector<std::string> & argv, double timeoutSeconds) {
    ProcessResult r;
    int outPipe[2], errPipe[2], execPipe[2];
    if (pipe(outPipe) != 0 || pipe(errPipe) != 0 || pipe(execPipe) != 0) {
        r.launchError = std::string("pipe: ") + std::strerror(errno);
        return r;
    }
    fcntl(execPipe[1], F_SETFD, FD_CLOEXEC);

    std::vector<char *> cargv;
    for (const auto & a : argv) cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);

    pid_t pid = fork();
    if (pid < 0) {
        r.launchError = std::string("fork: ") + std::strerror(errno);
        return r;
    }
    if (pid == 0) {
        setpgid(0, 0);
        dup2(outPipe[1], STDOUT_FILENO);
        dup2(errPipe[1], STDERR_FILENO);
        close(outPipe[0]);
        close(errPipe[0]);
        close(execPipe[0]);
        int devnull = open("/dev/null", O_RDONLY);
        if (devnull >= 0) dup2(devnull, STDIN_FILENO);
        execvp(cargv[0], cargv.data());
        int e = errno;
        ssize_t ignored = write(execPipe[1], &e, sizeof e);
        (void)ignored;
        _exit(127);
    }
    setpgid(pid, pid);
    close(outPipe[1]);
    close(errPipe[1]);
    close(execPipe[1]);

    int execErr = 0;
    if (read(execPipe[0], &execErr, sizeof execErr) == sizeof execErr) {
        close(execPipe[0]);
        close(outPipe[0]);
        close(errPipe[0]);
        waitpid(pid, nullptr, 0);
        r.launchError = "cannot execute '" + argv[0] + "': " + std::strerror(execErr);
        return r;
    }
    close(execPipe[0]);
    r.launched = true;

    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::duration<double>(timeoutSeconds);
    pollfd fds[2] = {{outPipe[0], POLLIN, 0}, {errPipe[0], POLLIN, 0}};
    int openFds = 2;
    char buf[4096];
    while (openFds > 0) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
        if (left <= 0) {
            r.timedOut = true;
            break;
        }
        int n = poll(fds, 2, static_cast<int>(std::min<long long>(left, 1000)));
        if (n < 0) {
            if (errno == EINTR) continue;
            break;
        }
        for (int i = 0; i < 2; ++i) {
            if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            ssize_t k = read(fds[i].fd, buf, sizeof buf);
            if (k > 0) {
                (i == 0 ? r.out : r.err).append(buf, static_cast<std::size_t>(k));
            } else if (k == 0 || errno != EINTR) {
                close(fds[i].fd);
                fds[i].fd = -1;
                --openFds;
            }
        }
    }
    if (r.timedOut) kill(-pid, SIGKILL);
    for (auto & f : fds)
        if (f.fd >= 0) close(f.fd);

    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) r.exitCode = WEXITSTATUS(status);
    if (WIFSIGNALED(status)) r.signal = WTERMSIG(status);
    return r;
}

std::string firstToken(const std::string & text, std::size_t & rest) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    rest = j;
    return text.substr(i, j - i);
}

class TempFile {
public:
    TempFile() {
        const char * dir = std::getenv("TMPDIR");
        std::string tmpl = std::string(dir && *dir ? dir : "/tmp") + "/chcelim-XXXXXX.smt2";
        std::vector<char> b(tmpl.begin(), tmpl.end());
        b.push_back('\0');
        int fd = mkstemps(b.data(), 5);
        if (fd < 0) throw std::runtime_error(std::string("mkstemps: ") + std::strerror(errno));
        close(fd);
        path_ = b.data();
    }
    ~TempFile() { std::remove(path_.c_str()); }
    TempFile(const TempFile &) = delete;
    TempFile & operator=(const TempFile &) = delete;
    const std::string & path() const { return path_; }

private:
    std::string path_;
};

std::vector<std::string> differencePreds(const Program & p) {
    std::vector<std::string> out;
    for (const auto & name : p.declOrder)
        if (p.predicates.at(name).role == PredRole::Difference) out.push_back(name);
    return out;
}

} // namespace

std::vector<std::string> solverArgv(const SolverConfig & cfg, const std::string & file) {
    auto argv = splitTemplate(cfg.command);
    if (argv.empty()) throw std::invalid_argument("empty solver command");
    if (const char * env = std::getenv(kSolverEnvVar); env && *env) argv[0] = env;
    bool placed = false;
    for (auto & a : argv) {
        for (auto pos = a.find("{file}"); pos != std::string::npos; pos = a.find("{file}", pos + file.size())) {
            a.replace(pos, 6, file);
            placed = true;
        }
    }
    for (const auto & [k, v] : cfg.options) argv.push_back(k + "=" + v);
    if (!placed) argv.push_back(file);
    return argv;
}

SolveOutcome solve(const Program & p, const SolverConfig & cfg) {
    if (!(cfg.timeoutSeconds > 0)) throw std::invalid_argument("solver timeout must be positive");
    SolveOutcome o;

    std::optional<TempFile> tmp;
    std::string path = cfg.scriptPath;
    if (path.empty()) {
        tmp.emplace();
        path = tmp->path();
    }
    {
        std::ofstream f(path);
        if (!f) {
            o.error = "cannot write script " + path;
            return o;
        }
        f << emitSmt2(p);
    }

    std::vector<std::string> argv;
    try {
        argv = solverArgv(cfg, path);
    } catch (const std::exception & e) {
        o.error = e.what();
        return o;
    }

    const auto start = std::chrono::steady_clock::now();
    ProcessResult r = runProcess(argv, cfg.timeoutSeconds);
    o.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.stdoutText = r.out;

    std::ostringstream raw;
    raw << ";; command:";
    for (const auto & a : argv) raw << ' ' << a;
    raw << "\n;; timeout: " << cfg.timeoutSeconds << "s\n";
    if (!r.launched) raw << ";; launch error: " << r.launchError << "\n";
    else if (r.timedOut) raw << ";; killed after timeout\n";
    else if (r.signal) raw << ";; terminated by signal " << r.signal << "\n";
    else raw << ";; exit status: " << r.exitCode << "\n";
    raw << ";; stdout:\n" << r.out;
    if (!r.out.empty() && r.out.back() != '\n') raw << '\n';
    raw << ";; stderr:\n" << r.err;
    if (!r.err.empty() && r.err.back() != '\n') raw << '\n';
    o.rawOutput = raw.str();

    if (!r.launched) {
        o.error = r.launchError;
        return o;
    }
    if (r.timedOut) {
        o.status = SolveStatus::Timeout;
        return o;
    }

    std::size_t rest = 0;
    const std::string answer = firstToken(r.out, rest);
    if (answer == "unsat") {
        o.status = SolveStatus::Unsat;
        return o;
    }
    if (answer == "unknown") {
        o.status = SolveStatus::Unknown;
        return o;
    }
    if (answer != "sat") {
        std::string text = r.out.empty() ? r.err : r.out;
        if (text.size() > 2000) text.resize(2000);
        o.error = "unrecognised solver answer (exit " + std::to_string(r.exitCode) + "): " + text;
        return o;
    }

    Model m;
    try {
        m = parseModel(std::string_view(r.out).substr(rest), p);
    } catch (const std::exception & e) {
        o.error = std::string("sat, but the model could not be parsed: ") + e.what();
        return o;
    }
    if (p.isListFree()) {
        Verdict v = validateModel(p, m, cfg.validation, differencePreds(p));
        o.modelVerdict = v;
        if (!v.holds) {
            o.error = "sat, but the model is invalid: " + v.counterexample.value_or("");
            return o;
        }
    }
    o.status = SolveStatus::Sat;
    o.model = std::move(m);
    return o;
}

SolveOutcome baselineAttempt(const Program & p, const SolverConfig & cfg) { return solve(p, cfg); }

} // namespace chcelim

#include "pop/evaluators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "pop/errors.hpp"
#include "pop/text_util.hpp"

namespace pop {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Box-Muller on the raw mt19937_64 stream; avoids the
// implementation-defined std::normal_distribution.
double seeded_standard_normal(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng] {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    double u1 = unit();
    double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double saturating_accuracy(double log_width_mass, const std::string& code_text,
                           const SyntheticOracleParams& p) {
    double acc = p.a_max * (1.0 - std::exp(-p.gamma * log_width_mass));
    if (p.noise_sigma > 0.0)
        acc += p.noise_sigma * seeded_standard_normal(fnv1a(code_text) ^ p.seed);
    return std::clamp(acc, 0.0, 1.0);
}

} // namespace

double synthetic_accuracy(const ArchitectureCode& code, const SyntheticOracleParams& params) {
    double mass = 0.0;
    for (const auto& stage : code.stages)
        for (int w : stage) mass += std::log2(static_cast<double>(w)) / 10.0;
    return saturating_accuracy(mass, format_code(code), params);
}

double synthetic_decoder_accuracy(const DecoderCode& code, const SyntheticOracleParams& params) {
    double mass = 0.0;
    for (int c : code.cc) mass += std::log2(static_cast<double>(c)) / 10.0;
    return saturating_accuracy(mass, format_decoder(code), params);
}

ReplayEvaluator::ReplayEvaluator(const std::vector<Record>& records) {
    for (const auto& r : records) {
        if (!accuracy_.emplace(r.code, r.accuracy).second)
            throw DataError("duplicate replay record for " + r.code);
    }
}

ReplayEvaluator ReplayEvaluator::from_file(const std::filesystem::path& path) {
    return ReplayEvaluator(load_records(path));
}

double ReplayEvaluator::evaluate(const std::string& code_text) const {
    auto it = accuracy_.find(code_text);
    if (it == accuracy_.end())
        throw EvaluatorError("no recorded accuracy for " + code_text);
    return it->second;
}

double external_accuracy(const std::string& code_text, const ExternalCommand& cmd) {
    int fds[2];
    if (pipe(fds) != 0) throw EvaluatorError("pipe() failed");

    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw EvaluatorError("fork() failed");
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        close(fds[0]);
        close(fds[1]);
        std::string script = cmd.command + " \"$1\"";
        execl("/bin/sh", "sh", "-c", script.c_str(), "sh", code_text.c_str(),
              static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    fcntl(fds[0], F_SETFL, O_NONBLOCK);

    const auto deadline_ms = static_cast<long>(cmd.timeout_seconds * 1000.0);
    long waited_ms = 0;
    std::string output;
    bool timed_out = false;
    char buf[4096];
    while (true) {
        pollfd pfd{fds[0], POLLIN, 0};
        int step = 20;
        int rc = poll(&pfd, 1, step);
        if (rc > 0) {
            ssize_t n;
            while ((n = read(fds[0], buf, sizeof buf)) > 0) output.append(buf, static_cast<std::size_t>(n));
            if (n == 0) break; // EOF
        }
        waited_ms += step;
        if (waited_ms >= deadline_ms) {
            timed_out = true;
            break;
        }
    }
    close(fds[0]);

    int status = 0;
    if (timed_out) {
        kill(pid, SIGKILL);
        waitpid(pid, &status, 0);
        throw EvaluatorError("external evaluator timed out after " +
                             format_double(cmd.timeout_seconds) + "s (command: " + cmd.command +
                             ")");
    }
    // Child closed stdout; give it the remaining budget to exit.
    while (true) {
        pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) break;
        if (waited_ms >= deadline_ms) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            throw EvaluatorError("external evaluator timed out after " +
                                 format_double(cmd.timeout_seconds) + "s (command: " +
                                 cmd.command + ")");
        }
        usleep(20000);
        waited_ms += 20;
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw EvaluatorError("external evaluator exited with status " +
                             std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) +
                             "; output: '" + trim(output) + "'");

    std::string text = trim(output);
    try {
        return parse_accuracy(text);
    } catch (const std::exception&) {
        throw EvaluatorError("cannot parse accuracy from external evaluator output '" + text +
                             "'");
    }
}

} // namespace pop

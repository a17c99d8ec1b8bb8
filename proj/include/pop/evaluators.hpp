#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>

#include "pop/arch.hpp"
#include "pop/decoder.hpp"
#include "pop/records.hpp"

namespace pop {

struct SyntheticOracleParams {
    double a_max = 0.8;        // asymptotic accuracy
    double gamma = 0.05;       // growth rate
    double noise_sigma = 0.0;  // per-code Gaussian noise
    std::uint64_t seed = 0;
};

// Saturating exponential of the total log-width mass:
//   a_max * (1 - exp(-gamma * sum_b log2(width_b) / 10)) + noise * sigma,
// clamped to [0,1]. Noiseless, it is strictly increasing along the partial
// order. Noise is seeded from the canonical code text, so re-evaluation is
// stable.
double synthetic_accuracy(const ArchitectureCode& code, const SyntheticOracleParams& params);

// Same functional form over the three CC widths; strictly increasing in
// each coordinate when noiseless.
double synthetic_decoder_accuracy(const DecoderCode& code, const SyntheticOracleParams& params);

// Serves accuracies recorded in a records file. Unknown codes are an
// EvaluatorError; duplicate rows fail at load time.
class ReplayEvaluator {
public:
    explicit ReplayEvaluator(const std::vector<Record>& records);
    static ReplayEvaluator from_file(const std::filesystem::path& path);

    double evaluate(const std::string& code_text) const;
    bool concurrency_safe() const { return true; }

private:
    std::unordered_map<std::string, double> accuracy_;
};

struct ExternalCommand {
    std::string command;
    double timeout_seconds = 600.0;
    bool concurrency_safe = false;
};

// Runs the command with the canonical code text as its sole argument and
// parses one decimal in [0,1] (or a percent with '%' suffix) from its
// standard output. Nonzero exit, timeout and unparseable output raise
// distinct EvaluatorErrors carrying the captured output.
double external_accuracy(const std::string& code_text, const ExternalCommand& cmd);

} // namespace pop

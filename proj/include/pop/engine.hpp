#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "pop/errors.hpp"
#include "pop/records.hpp"

namespace pop {

struct SearchConfig {
    std::uint64_t seed = 0;
    int patience = 20;                                    // iterations with an unchanged frontier
    int max_evaluations = std::numeric_limits<int>::max();
    std::optional<double> report_bin_ms;                  // frontier export bin width
};

template <class Code>
struct TrainedRecord {
    Code code;
    double latency_ms = 0.0;
    double accuracy = 0.0;
    int iteration = 0;
};

// (anchor w, Lat(y_w)): implicitly prunes every strict precedent of the
// anchor whose latency is at least the threshold.
template <class Code>
struct PruneCertificate {
    Code anchor;
    double threshold_ms = 0.0;
};

struct SearchStats {
    int trained = 0;
    long pruned = 0;      // untrained elements covered by certificates at termination
    double ratio = 0.0;   // pruned / trained
    int iterations = 0;
    std::string stop_reason;
};

template <class Code>
struct SearchResult {
    std::vector<TrainedRecord<Code>> records;
    std::vector<TrainedRecord<Code>> frontier;
    std::vector<PruneCertificate<Code>> certificates;
    std::vector<HistoryRow> history;
    SearchStats stats;
};

// Portable uniform draw in [0, n); rejection keeps it unbiased.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
}

// x belongs to the frontier iff every trained w has Lat(w) >= Lat(x) or
// Acc(w) <= Acc(x). Result keeps the input order.
template <class Code>
std::vector<TrainedRecord<Code>> frontier(const std::vector<TrainedRecord<Code>>& records) {
    std::vector<TrainedRecord<Code>> out;
    for (const auto& x : records) {
        bool keep = true;
        for (const auto& w : records) {
            if (!(w.latency_ms >= x.latency_ms || w.accuracy <= x.accuracy)) {
                keep = false;
                break;
            }
        }
        if (keep) out.push_back(x);
    }
    return out;
}

// Index of y_w: the fastest record with accuracy >= that of records[w].
// Ties on latency go to higher accuracy, then lexicographic code text.
// Always defined because w itself qualifies.
template <class Rec, class TextFn>
std::size_t best_faster_or_equal_index(std::size_t w, const std::vector<Rec>& records,
                                       TextFn&& text) {
    std::size_t best = w;
    for (std::size_t y = 0; y < records.size(); ++y) {
        if (records[y].accuracy < records[w].accuracy) continue;
        const auto& cand = records[y];
        const auto& cur = records[best];
        if (cand.latency_ms < cur.latency_ms ||
            (cand.latency_ms == cur.latency_ms &&
             (cand.accuracy > cur.accuracy ||
              (cand.accuracy == cur.accuracy && text(cand.code) < text(cur.code)))))
            best = y;
    }
    return best;
}

// One certificate per trained anchor, threshold = Lat(y_w) under the
// current record set. Thresholds only move down as records accumulate.
template <class Code, class TextFn>
std::vector<PruneCertificate<Code>> update_certificates(
    const std::vector<TrainedRecord<Code>>& records, TextFn&& text) {
    std::vector<PruneCertificate<Code>> certs;
    certs.reserve(records.size());
    for (std::size_t w = 0; w < records.size(); ++w) {
        std::size_t yw = best_faster_or_equal_index(w, records, text);
        certs.push_back({records[w].code, records[yw].latency_ms});
    }
    return certs;
}

// m is pruned iff some certificate (w, t) has m < w and Lat(m) >= t.
template <class Code, class Space>
bool is_pruned(const Code& m, const std::vector<PruneCertificate<Code>>& certs,
               const Space& space) {
    double lat_m = space.latency(m);
    for (const auto& cert : certs)
        if (lat_m >= cert.threshold_ms && space.precedes(m, cert.anchor)) return true;
    return false;
}

// Pairwise latency/accuracy deltas over all comparable record pairs.
struct AssumptionPair {
    std::string x_code, y_code; // x precedes y
    double delta_latency_ms = 0.0;
    double delta_accuracy = 0.0;
};

struct AssumptionReport {
    std::vector<AssumptionPair> pairs;
    std::size_t pair_count = 0;
    std::size_t negative_accuracy_deltas = 0;
    std::size_t negative_latency_deltas = 0;
    double min_delta_accuracy = 0.0; // meaningful only when pair_count > 0
    double min_delta_latency = 0.0;

    double fraction_negative_accuracy() const {
        return pair_count ? static_cast<double>(negative_accuracy_deltas) / pair_count : 0.0;
    }
    double fraction_negative_latency() const {
        return pair_count ? static_cast<double>(negative_latency_deltas) / pair_count : 0.0;
    }
};

template <class Rec, class PrecedesFn, class TextFn>
AssumptionReport check_assumption(const std::vector<Rec>& records, PrecedesFn&& precedes,
                                  TextFn&& text) {
    AssumptionReport report;
    for (const auto& x : records) {
        for (const auto& y : records) {
            if (!precedes(x.code, y.code)) continue;
            AssumptionPair p;
            p.x_code = text(x.code);
            p.y_code = text(y.code);
            p.delta_latency_ms = y.latency_ms - x.latency_ms;
            p.delta_accuracy = y.accuracy - x.accuracy;
            if (report.pair_count == 0) {
                report.min_delta_accuracy = p.delta_accuracy;
                report.min_delta_latency = p.delta_latency_ms;
            } else {
                report.min_delta_accuracy = std::min(report.min_delta_accuracy, p.delta_accuracy);
                report.min_delta_latency = std::min(report.min_delta_latency, p.delta_latency_ms);
            }
            ++report.pair_count;
            if (p.delta_accuracy < 0.0) ++report.negative_accuracy_deltas;
            if (p.delta_latency_ms < 0.0) ++report.negative_latency_deltas;
            report.pairs.push_back(std::move(p));
        }
    }
    return report;
}

// Partial Order Pruning search loop. The space must be materialized and
// expose codes(), latency(code), precedes(a, b) and text(code); the
// evaluator maps a code to an accuracy fraction. Each iteration trains a
// uniformly sampled element that is neither trained nor pruned, refreshes
// the certificates and the frontier, and logs one history row. Stops when
// the frontier is unchanged for `patience` iterations, max_evaluations is
// reached, or no selectable element remains.
template <class Space, class Evaluator>
SearchResult<typename Space::code_type> pop_search(const Space& space, Evaluator&& evaluate,
                                                   const SearchConfig& cfg) {
    using Code = typename Space::code_type;
    if (cfg.patience < 1) throw DataError("patience must be >= 1");

    const auto& all = space.codes();
    if (all.empty()) throw DataError("search space is empty");
    auto text = [&space](const Code& c) { return space.text(c); };

    SearchResult<Code> result;
    std::mt19937_64 rng(cfg.seed);
    std::unordered_set<std::string> trained;
    std::vector<std::string> prev_frontier;
    int unchanged = 0;

    auto pruned_indices = [&](const std::vector<PruneCertificate<Code>>& certs) {
        long untrained_pruned = 0;
        for (const auto& m : all)
            if (!trained.count(space.text(m)) && is_pruned(m, certs, space)) ++untrained_pruned;
        return untrained_pruned;
    };

    while (true) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (trained.count(space.text(all[i]))) continue;
            if (is_pruned(all[i], result.certificates, space)) continue;
            candidates.push_back(i);
        }
        if (candidates.empty()) {
            result.stats.stop_reason = "space exhausted";
            break;
        }

        const Code& code = all[candidates[uniform_index(rng, candidates.size())]];
        double accuracy;
        try {
            accuracy = evaluate(code);
        } catch (const std::exception& e) {
            throw EvaluatorError("evaluator failed for " + space.text(code) + ": " + e.what());
        }
        if (accuracy < 0.0 || accuracy > 1.0)
            throw EvaluatorError("evaluator returned out-of-range accuracy for " +
                                 space.text(code));

        int iteration = static_cast<int>(result.records.size());
        result.records.push_back({code, space.latency(code), accuracy, iteration});
        trained.insert(space.text(code));

        result.certificates = update_certificates(result.records, text);
        result.frontier = frontier(result.records);

        std::vector<std::string> frontier_texts;
        for (const auto& f : result.frontier) frontier_texts.push_back(space.text(f.code));
        bool changed = frontier_texts != prev_frontier;
        prev_frontier = std::move(frontier_texts);

        HistoryRow row;
        row.iteration = iteration;
        row.code = space.text(code);
        row.latency_ms = result.records.back().latency_ms;
        row.accuracy = accuracy;
        row.trained = static_cast<int>(result.records.size());
        row.pruned = pruned_indices(result.certificates);
        row.frontier_changed = changed;
        result.history.push_back(std::move(row));

        unchanged = changed ? 0 : unchanged + 1;
        if (unchanged >= cfg.patience) {
            result.stats.stop_reason = "frontier unchanged for patience iterations";
            break;
        }
        if (static_cast<int>(result.records.size()) >= cfg.max_evaluations) {
            result.stats.stop_reason = "max evaluations reached";
            break;
        }
    }

    result.stats.trained = static_cast<int>(result.records.size());
    result.stats.pruned = result.history.empty() ? pruned_indices(result.certificates)
                                                 : result.history.back().pruned;
    result.stats.ratio = result.stats.trained
                             ? static_cast<double>(result.stats.pruned) / result.stats.trained
                             : 0.0;
    result.stats.iterations = static_cast<int>(result.history.size());
    return result;
}

} // namespace pop

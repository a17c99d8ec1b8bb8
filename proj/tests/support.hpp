#pragma once

// Test-only oracles and generators. Everything here is deliberately naive
// (enumerate-all, BFS, O(n^2) scans) and independent of the library's
// algorithmic paths, so it can serve as ground truth.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pop/arch.hpp"
#include "pop/engine.hpp"
#include "pop/latency.hpp"
#include "pop/partial_order.hpp"

namespace testsupport {

using pop::Alphabet;
using pop::ArchitectureCode;
using pop::BlockConfig;
using pop::BlockKind;
using pop::LatencyTable;
using pop::LayerKind;

// --- code space generation -------------------------------------------------

// Every valid code with 1..max_blocks blocks per stage over the alphabet.
inline std::vector<ArchitectureCode> all_codes(const Alphabet& alphabet, BlockKind kind,
                                               int max_blocks) {
    std::vector<ArchitectureCode> out;
    ArchitectureCode code;
    code.kinds = {kind, kind, kind};

    std::function<void(int, int)> fill_stage = [&](int s, int min_w_idx) {
        if (s == 3) {
            out.push_back(code);
            return;
        }
        std::function<void(int, int)> grow = [&](int blocks, int w_idx) {
            if (blocks >= 1) fill_stage(s + 1, w_idx);
            if (blocks == max_blocks) return;
            for (int i = w_idx; i < static_cast<int>(alphabet.size()); ++i) {
                code.stages[s].push_back(alphabet[i]);
                grow(blocks + 1, i);
                code.stages[s].pop_back();
            }
        };
        grow(0, min_w_idx);
    };
    fill_stage(0, 0);
    return out;
}

// Seeded random valid code: iid widths sorted, then split across stages.
inline ArchitectureCode random_code(std::mt19937_64& rng, const Alphabet& alphabet,
                                    int max_blocks, BlockKind kind = BlockKind::basic) {
    auto len = [&rng, max_blocks] {
        return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_blocks));
    };
    int l = len(), m = len(), n = len();
    std::vector<int> widths;
    for (int i = 0; i < l + m + n; ++i)
        widths.push_back(alphabet[rng() % alphabet.size()]);
    std::sort(widths.begin(), widths.end());
    ArchitectureCode code;
    code.kinds = {kind, kind, kind};
    code.stages[0].assign(widths.begin(), widths.begin() + l);
    code.stages[1].assign(widths.begin() + l, widths.begin() + l + m);
    code.stages[2].assign(widths.begin() + l + m, widths.end());
    return code;
}

// Random element of the down-set of x: a short walk over elementary shrinks.
inline ArchitectureCode random_shrink_walk(std::mt19937_64& rng, const ArchitectureCode& x,
                                           const Alphabet& alphabet, int max_steps) {
    ArchitectureCode cur = x;
    int steps = static_cast<int>(rng() % static_cast<std::uint64_t>(max_steps + 1));
    for (int i = 0; i < steps; ++i) {
        auto moves = pop::elementary_shrinks(cur, alphabet);
        if (moves.empty()) break;
        cur = moves[rng() % moves.size()];
    }
    return cur;
}

// --- BFS closure oracle ----------------------------------------------------

// Every strict descendant of y under repeated elementary shrinks, as
// canonical texts.
inline std::set<std::string> shrink_down_set(const ArchitectureCode& y,
                                             const Alphabet& alphabet) {
    std::set<std::string> visited;
    std::queue<ArchitectureCode> queue;
    queue.push(y);
    while (!queue.empty()) {
        ArchitectureCode cur = queue.front();
        queue.pop();
        for (const auto& m : pop::elementary_shrinks(cur, alphabet))
            if (visited.insert(pop::format_code(m)).second) queue.push(m);
    }
    return visited;
}

// Reachability oracle: x is reachable from y via elementary shrinks.
inline bool reachable_by_shrinks(const ArchitectureCode& x, const ArchitectureCode& y,
                                 const Alphabet& alphabet) {
    const std::string target = pop::format_code(x);
    std::set<std::string> visited{pop::format_code(y)};
    std::queue<ArchitectureCode> queue;
    queue.push(y);
    while (!queue.empty()) {
        ArchitectureCode cur = queue.front();
        queue.pop();
        for (const auto& m : pop::elementary_shrinks(cur, alphabet)) {
            std::string t = pop::format_code(m);
            if (t == target) return true;
            if (visited.insert(t).second) queue.push(m);
        }
    }
    return false;
}

// --- synthetic monotone latency tables --------------------------------------

// Per-layer cost depends only on the stage and the channel counts, is
// strictly increasing in both channels and identical for stride-2 and
// stride-1 blocks of a stage. Together with positivity this makes the
// whole-network estimate monotone along the partial order. Irrational
// stage scales keep distinct codes at distinct latencies.
inline LatencyTable make_monotone_table(const Alphabet& alphabet, BlockKind kind,
                                        int resolution, int num_classes) {
    LatencyTable table;
    const int r = resolution;
    pop::StemConfig stem;
    table.entries[{LayerKind::stem_conv, 3, r, r, stem.conv1_width, r / 2, r / 2}] = 0.11;
    table.entries[{LayerKind::stem_conv, stem.conv1_width, r / 2, r / 2, stem.conv2_width,
                   r / 4, r / 4}] = 0.143;

    const double scale[3] = {0.7, 0.9 * std::sqrt(2.0), 0.65 * std::sqrt(3.0)};
    LayerKind block = kind == BlockKind::bottleneck ? LayerKind::bottleneck_block
                                                    : LayerKind::basic_block;
    auto out_ch = [kind](int w) { return pop::block_out_channels(w, kind); };

    std::set<int> in_channels{stem.conv2_width};
    for (int w : alphabet) in_channels.insert(out_ch(w));

    for (int s = 0; s < 3; ++s) {
        int res_in = r / (4 << s);
        auto cost = [&](int ci, int co) {
            return scale[s] * (0.21 + ci * 7.3e-5 + co * 1.31e-4);
        };
        for (int ci : in_channels) {
            for (int w : alphabet) {
                int co = out_ch(w);
                table.entries[{block, ci, res_in, res_in, co, res_in / 2, res_in / 2}] =
                    cost(ci, co);
                table.entries[{block, ci, res_in / 2, res_in / 2, co, res_in / 2, res_in / 2}] =
                    cost(ci, co);
            }
        }
    }
    for (int w : alphabet) {
        int co = out_ch(w);
        table.entries[{LayerKind::head, co, r / 32, r / 32, num_classes, 1, 1}] =
            0.045 + co * 2.1e-5;
    }
    return table;
}

// --- injective monotone accuracy oracle --------------------------------------

// Widths map to powers of five, so per-stage sums are injective for up to
// four blocks per stage; rationally independent stage weights make the
// combined mass injective across stages. Strictly increasing along the
// partial order.
inline double injective_monotone_accuracy(const ArchitectureCode& code) {
    double mass = 0.0;
    const double weight[3] = {1.0, std::sqrt(2.0), std::sqrt(3.0)};
    for (int s = 0; s < 3; ++s)
        for (int w : code.stages[s])
            mass += weight[s] * std::pow(5.0, std::log2(static_cast<double>(w)) - 6.0);
    return 1.0 - 1.0 / (1.0 + 0.05 * mass);
}

// --- brute-force Pareto oracle -----------------------------------------------

struct Point {
    std::string code;
    double latency_ms;
    double accuracy;
};

// Strict-domination Pareto set: survivors have no strictly better point
// (<= latency, >= accuracy, at least one strict).
inline std::vector<Point> brute_force_pareto(const std::vector<Point>& points) {
    std::vector<Point> out;
    for (const auto& x : points) {
        bool dominated = false;
        for (const auto& w : points) {
            if (w.latency_ms <= x.latency_ms && w.accuracy >= x.accuracy &&
                (w.latency_ms < x.latency_ms || w.accuracy > x.accuracy)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(x);
    }
    return out;
}

inline std::set<std::string> code_set(const std::vector<Point>& points) {
    std::set<std::string> s;
    for (const auto& p : points) s.insert(p.code);
    return s;
}

} // namespace testsupport

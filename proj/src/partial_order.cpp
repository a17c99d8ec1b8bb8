#include "pop/partial_order.hpp"

#include <algorithm>
#include <set>

namespace pop {

namespace {

// Both sequences are non-decreasing, so the greedy match is complete:
// each a_i takes the first still-unused b_j with a_i <= b_j.
bool dominated_subsequence(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t j = 0;
    for (int ai : a) {
        while (j < b.size() && b[j] < ai) ++j;
        if (j == b.size()) return false;
        ++j;
    }
    return true;
}

} // namespace

bool precedes(const ArchitectureCode& x, const ArchitectureCode& y) {
    if (x.kinds != y.kinds || x.stem != y.stem) return false;
    if (x == y) return false;
    for (int s = 0; s < 3; ++s)
        if (!dominated_subsequence(x.stages[s], y.stages[s])) return false;
    return true;
}

std::vector<ArchitectureCode> elementary_shrinks(const ArchitectureCode& x,
                                                 const Alphabet& alphabet) {
    std::set<std::string> seen;
    std::vector<ArchitectureCode> out;
    auto emit = [&](ArchitectureCode m) {
        if (seen.insert(format_code(m)).second) out.push_back(std::move(m));
    };

    // Flattened view of the width chain for neighbor checks.
    for (int s = 0; s < 3; ++s) {
        const auto& stage = x.stages[s];
        // (a) delete one block from a stage with >= 2 blocks
        if (stage.size() >= 2) {
            for (std::size_t i = 0; i < stage.size(); ++i) {
                ArchitectureCode m = x;
                m.stages[s].erase(m.stages[s].begin() + static_cast<std::ptrdiff_t>(i));
                emit(std::move(m));
            }
        }
        // (b) lower one block's width to the adjacent lower alphabet value
        for (std::size_t i = 0; i < stage.size(); ++i) {
            auto it = std::lower_bound(alphabet.begin(), alphabet.end(), stage[i]);
            if (it == alphabet.begin() || it == alphabet.end() || *it != stage[i]) continue;
            int lowered = *std::prev(it);
            // predecessor in the concatenated width chain
            int prev = 0;
            if (i > 0) {
                prev = stage[i - 1];
            } else if (s > 0) {
                prev = x.stages[s - 1].back();
            }
            if (lowered < prev) continue;
            ArchitectureCode m = x;
            m.stages[s][i] = lowered;
            emit(std::move(m));
        }
    }

    std::sort(out.begin(), out.end(), [](const ArchitectureCode& a, const ArchitectureCode& b) {
        return format_code(a) < format_code(b);
    });
    return out;
}

std::size_t count_precedents(const ArchitectureCode& x,
                             const std::vector<ArchitectureCode>& space) {
    std::size_t n = 0;
    for (const auto& m : space)
        if (precedes(m, x)) ++n;
    return n;
}

} // namespace pop

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pop/arch.hpp"

namespace pop {

struct TableMeta {
    std::string platform;
    std::string tool;
    int resolution = 0;
};

// Profiled per-layer latencies keyed by layer configuration.
struct LatencyTable {
    std::map<BlockConfig, double> entries;
    TableMeta meta;

    // Throws DataError naming the absent configuration.
    double at(const BlockConfig& key) const;
};

// CSV format: header kind,c_in,h_in,w_in,c_out,h_out,w_out,latency_ms;
// '#' lines are comments ('# platform:', '# tool:', '# resolution:' fill
// the metadata). Rejects malformed rows, non-positive latencies and
// duplicate keys; an entry-less file is an error.
LatencyTable parse_table(std::istream& in);
LatencyTable load_table(const std::filesystem::path& path);
void save_table(const LatencyTable& table, std::ostream& out);

// Sum of table latencies over block_configs(code, resolution, classes).
double estimate_latency(const ArchitectureCode& code, const LatencyTable& table,
                        int resolution, int num_classes);

// A pair of keys identical except for channel counts where the wider one
// is strictly faster, contradicting latency monotonicity.
struct MonotonicityViolation {
    BlockConfig narrower, wider;
    double narrower_ms, wider_ms;
};

struct AuditReport {
    std::vector<MonotonicityViolation> violations;
    std::size_t pairs_checked = 0;
};

AuditReport audit_monotonicity(const LatencyTable& table);

// Inclusive latency window [t_min, t_max].
struct LatencyBand {
    double t_min = 0.0;
    double t_max = 0.0;
};

struct EnumerationParams {
    Alphabet alphabet = default_alphabet();
    BlockKind kind = BlockKind::basic;
    int resolution = 224;
    int num_classes = 1000;
    int max_blocks_per_stage = 32;
};

// All valid codes whose estimated latency falls inside the band, by
// depth-first construction. A partial architecture is abandoned once
// stem + committed blocks + the cheapest legal completion already
// exceeds t_max; sound because every table entry is positive and the
// estimate is additive. Result is sorted by canonical text.
std::vector<ArchitectureCode> enumerate_subspace(const LatencyBand& band,
                                                 const LatencyTable& table,
                                                 const EnumerationParams& params);

} // namespace pop

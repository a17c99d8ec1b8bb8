#include "pop/latency.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pop/errors.hpp"
#include "pop/text_util.hpp"

namespace pop {

double LatencyTable::at(const BlockConfig& key) const {
    auto it = entries.find(key);
    if (it == entries.end())
        throw DataError("no latency entry for " + to_string(key));
    return it->second;
}

static const char* kTableHeader = "kind,c_in,h_in,w_in,c_out,h_out,w_out,latency_ms";

LatencyTable parse_table(std::istream& in) {
    LatencyTable table;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string c = trim(t.substr(1));
            auto colon = c.find(':');
            if (colon != std::string::npos) {
                std::string key = trim(c.substr(0, colon));
                std::string value = trim(c.substr(colon + 1));
                if (key == "platform") table.meta.platform = value;
                else if (key == "tool") table.meta.tool = value;
                else if (key == "resolution") table.meta.resolution = parse_int(value, "resolution");
            }
            continue;
        }
        if (!header_seen) {
            if (t != kTableHeader)
                throw ParseError("latency table header must be '" + std::string(kTableHeader) +
                                 "', got '" + t + "'");
            header_seen = true;
            continue;
        }
        auto fields = split(t, ',');
        if (fields.size() != 8)
            throw ParseError("line " + std::to_string(lineno) + ": expected 8 fields, got " +
                             std::to_string(fields.size()));
        BlockConfig key;
        key.kind = layer_kind_from_string(trim(fields[0]));
        key.c_in = parse_int(fields[1], "c_in");
        key.h_in = parse_int(fields[2], "h_in");
        key.w_in = parse_int(fields[3], "w_in");
        key.c_out = parse_int(fields[4], "c_out");
        key.h_out = parse_int(fields[5], "h_out");
        key.w_out = parse_int(fields[6], "w_out");
        double ms = parse_double(fields[7], "latency_ms");
        if (ms <= 0.0)
            throw DataError("line " + std::to_string(lineno) + ": non-positive latency " +
                            format_double(ms) + " for " + to_string(key));
        if (!table.entries.emplace(key, ms).second)
            throw DataError("line " + std::to_string(lineno) + ": duplicate key " + to_string(key));
    }
    if (table.entries.empty())
        throw DataError("latency table has no entries");
    return table;
}

LatencyTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open latency table '" + path.string() + "'");
    try {
        return parse_table(in);
    } catch (const std::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_table(const LatencyTable& table, std::ostream& out) {
    if (!table.meta.platform.empty()) out << "# platform: " << table.meta.platform << '\n';
    if (!table.meta.tool.empty()) out << "# tool: " << table.meta.tool << '\n';
    if (table.meta.resolution > 0) out << "# resolution: " << table.meta.resolution << '\n';
    out << kTableHeader << '\n';
    for (const auto& [key, ms] : table.entries)
        out << to_string(key) << ',' << format_double(ms) << '\n';
}

double estimate_latency(const ArchitectureCode& code, const LatencyTable& table,
                        int resolution, int num_classes) {
    double total = 0.0;
    for (const auto& cfg : block_configs(code, resolution, num_classes))
        total += table.at(cfg);
    return total;
}

AuditReport audit_monotonicity(const LatencyTable& table) {
    // Group by everything except channels.
    struct Entry {
        BlockConfig key;
        double ms;
    };
    std::map<std::tuple<LayerKind, int, int, int, int>, std::vector<Entry>> groups;
    for (const auto& [key, ms] : table.entries)
        groups[{key.kind, key.h_in, key.w_in, key.h_out, key.w_out}].push_back({key, ms});

    AuditReport report;
    for (const auto& [sig, entries] : groups) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = 0; j < entries.size(); ++j) {
                if (i == j) continue;
                const auto& a = entries[i];
                const auto& b = entries[j];
                bool narrower = a.key.c_in <= b.key.c_in && a.key.c_out <= b.key.c_out &&
                                (a.key.c_in < b.key.c_in || a.key.c_out < b.key.c_out);
                if (!narrower) continue;
                ++report.pairs_checked;
                if (a.ms > b.ms)
                    report.violations.push_back({a.key, b.key, a.ms, b.ms});
            }
        }
    }
    return report;
}

namespace {

class SubspaceEnumerator {
public:
    SubspaceEnumerator(const LatencyBand& band, const LatencyTable& table,
                       const EnumerationParams& params)
        : band_(band), table_(table), p_(params) {
        if (p_.resolution <= 0 || p_.resolution % 32 != 0)
            throw DataError("input resolution " + std::to_string(p_.resolution) +
                            " is not divisible by 32");
        n_ = static_cast<int>(p_.alphabet.size());
        block_kind_ = p_.kind == BlockKind::bottleneck ? LayerKind::bottleneck_block
                                                       : LayerKind::basic_block;
        int r = p_.resolution;
        StemConfig stem;
        stem_cost_ = table_.at({LayerKind::stem_conv, 3, r, r, stem.conv1_width, r / 2, r / 2}) +
                     table_.at({LayerKind::stem_conv, stem.conv1_width, r / 2, r / 2,
                                stem.conv2_width, r / 4, r / 4});
        stem_out_ = stem.conv2_width;
        compute_completion_bound();
    }

    std::vector<ArchitectureCode> run() {
        for (int wi = 0; wi < n_; ++wi) {
            stages_[0] = {p_.alphabet[wi]};
            descend(0, wi, stem_cost_ + first_block_cost(0, stem_out_, wi));
        }
        std::sort(out_.begin(), out_.end(),
                  [](const ArchitectureCode& a, const ArchitectureCode& b) {
                      return format_code(a) < format_code(b);
                  });
        return std::move(out_);
    }

private:
    int stage_in_res(int s) const { return p_.resolution / (4 << s); }
    int out_channels(int w) const { return block_out_channels(w, p_.kind); }

    double first_block_cost(int s, int c_in, int wi) const {
        int res = stage_in_res(s);
        return table_.at({block_kind_, c_in, res, res, out_channels(p_.alphabet[wi]),
                          res / 2, res / 2});
    }
    double inner_block_cost(int s, int wi_prev, int wi) const {
        int res = stage_in_res(s) / 2;
        return table_.at({block_kind_, out_channels(p_.alphabet[wi_prev]), res, res,
                          out_channels(p_.alphabet[wi]), res, res});
    }
    double head_cost(int wi) const {
        int res = p_.resolution / 32;
        return table_.at({LayerKind::head, out_channels(p_.alphabet[wi]), res, res,
                          p_.num_classes, 1, 1});
    }

    // completion_[s][wi]: cheapest mandatory remainder (one block per
    // unstarted stage plus the head) given stage s ended on width wi.
    void compute_completion_bound() {
        completion_.assign(3, std::vector<double>(static_cast<std::size_t>(n_), 0.0));
        for (int wi = 0; wi < n_; ++wi) completion_[2][wi] = head_cost(wi);
        for (int s = 1; s >= 0; --s) {
            for (int wi = 0; wi < n_; ++wi) {
                double best = -1.0;
                for (int wj = wi; wj < n_; ++wj) {
                    double c = first_block_cost(s + 1, out_channels(p_.alphabet[wi]), wj) +
                               completion_[s + 1][wj];
                    if (best < 0.0 || c < best) best = c;
                }
                completion_[s][wi] = best;
            }
        }
    }

    void descend(int s, int wi_last, double cost) {
        if (cost + completion_[s][wi_last] > band_.t_max) return;

        if (s == 2) {
            double total = cost + head_cost(wi_last);
            if (total >= band_.t_min && total <= band_.t_max) emit();
        } else {
            for (int wj = wi_last; wj < n_; ++wj) {
                stages_[s + 1] = {p_.alphabet[wj]};
                descend(s + 1, wj,
                        cost + first_block_cost(s + 1, out_channels(p_.alphabet[wi_last]), wj));
            }
            stages_[s + 1].clear();
        }

        if (static_cast<int>(stages_[s].size()) < p_.max_blocks_per_stage) {
            for (int wj = wi_last; wj < n_; ++wj) {
                stages_[s].push_back(p_.alphabet[wj]);
                descend(s, wj, cost + inner_block_cost(s, wi_last, wj));
                stages_[s].pop_back();
            }
        }
    }

    void emit() {
        ArchitectureCode code;
        code.stages = stages_;
        code.kinds = {p_.kind, p_.kind, p_.kind};
        out_.push_back(std::move(code));
    }

    LatencyBand band_;
    const LatencyTable& table_;
    EnumerationParams p_;
    int n_ = 0;
    LayerKind block_kind_{};
    double stem_cost_ = 0.0;
    int stem_out_ = 64;
    std::vector<std::vector<double>> completion_;
    std::array<std::vector<int>, 3> stages_;
    std::vector<ArchitectureCode> out_;
};

} // namespace

std::vector<ArchitectureCode> enumerate_subspace(const LatencyBand& band,
                                                 const LatencyTable& table,
                                                 const EnumerationParams& params) {
    if (params.alphabet.empty()) throw DataError("empty width alphabet");
    if (params.max_blocks_per_stage < 1) throw DataError("max_blocks_per_stage must be >= 1");
    return SubspaceEnumerator(band, table, params).run();
}

} // namespace pop

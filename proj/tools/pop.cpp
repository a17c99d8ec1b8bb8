#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"

#include "pop/arch.hpp"
#include "pop/decoder.hpp"
#include "pop/engine.hpp"
#include "pop/errors.hpp"
#include "pop/evaluators.hpp"
#include "pop/latency.hpp"
#include "pop/partial_order.hpp"
#include "pop/records.hpp"
#include "pop/spaces.hpp"
#include "pop/text_util.hpp"

namespace {

using namespace pop;

Alphabet parse_alphabet(const std::string& spec) {
    Alphabet a;
    for (const auto& f : split(spec, ',')) a.push_back(parse_int(f, "alphabet width"));
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) throw ParseError("empty width alphabet");
    return a;
}

LatencyBand parse_band(const std::string& spec) {
    auto fields = split(spec, ',');
    if (fields.size() != 2) throw ParseError("band must be 'lo,hi'");
    LatencyBand band{parse_double(fields[0], "band low"), parse_double(fields[1], "band high")};
    if (band.t_min < 0.0 || band.t_max < band.t_min)
        throw ParseError("band must satisfy 0 <= lo <= hi");
    return band;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("POP_SEED"))
        return static_cast<std::uint64_t>(std::stoull(env));
    return 0;
}

bool is_decoder_code(const std::string& text) {
    auto colon = text.find(':');
    auto bracket = text.find('[');
    return colon != std::string::npos && (bracket == std::string::npos || colon < bracket);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw DataError("cannot open output file '" + path + "'");
    return file;
}

// Evaluator selection shared by backbone and decoder searches.
struct EvaluatorSpec {
    std::string kind = "synthetic"; // synthetic | replay | cmd
    std::string argument;
    SyntheticOracleParams synthetic;
    double cmd_timeout_seconds = 600.0;

    static EvaluatorSpec parse(const std::string& text) {
        EvaluatorSpec spec;
        if (text == "synthetic") {
            spec.kind = "synthetic";
        } else if (text.rfind("replay:", 0) == 0) {
            spec.kind = "replay";
            spec.argument = text.substr(7);
        } else if (text.rfind("cmd:", 0) == 0) {
            spec.kind = "cmd";
            spec.argument = text.substr(4);
        } else {
            throw ParseError("evaluator must be synthetic, replay:FILE or cmd:\"...\"");
        }
        return spec;
    }
};

void write_assumption_report(const AssumptionReport& report, std::ostream& out) {
    out << "x_code,y_code,delta_latency_ms,delta_accuracy\n";
    for (const auto& p : report.pairs)
        out << csv_quote(p.x_code) << ',' << csv_quote(p.y_code) << ','
            << format_double(p.delta_latency_ms) << ',' << format_double(p.delta_accuracy)
            << '\n';
    out << "# pairs: " << report.pair_count << '\n';
    out << "# fraction_delta_accuracy_negative: "
        << format_double(report.fraction_negative_accuracy()) << '\n';
    out << "# fraction_delta_latency_negative: "
        << format_double(report.fraction_negative_latency()) << '\n';
    if (report.pair_count) {
        out << "# min_delta_accuracy: " << format_double(report.min_delta_accuracy) << '\n';
        out << "# min_delta_latency_ms: " << format_double(report.min_delta_latency) << '\n';
    } else {
        out << "# min_delta_accuracy: n/a\n";
        out << "# min_delta_latency_ms: n/a\n";
    }
}

template <class Code>
std::vector<Record> to_records(const std::vector<TrainedRecord<Code>>& records,
                               const std::function<std::string(const Code&)>& text) {
    std::vector<Record> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({text(r.code), r.latency_ms, r.accuracy});
    return out;
}

void sort_by_latency(std::vector<Record>& records) {
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        if (a.latency_ms != b.latency_ms) return a.latency_ms < b.latency_ms;
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        return a.code < b.code;
    });
}

template <class Space, class Evaluate>
void run_search_and_write(const Space& space, Evaluate&& evaluate, const SearchConfig& cfg,
                          const std::string& out_dir) {
    auto result = pop_search(space, evaluate, cfg);

    std::filesystem::create_directories(out_dir);
    auto path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    std::function<std::string(const typename Space::code_type&)> text =
        [&space](const typename Space::code_type& c) { return space.text(c); };

    {
        std::ofstream f(path("records.csv"));
        save_records(to_records(result.records, text), f);
    }
    {
        auto frontier_records = to_records(result.frontier, text);
        if (cfg.report_bin_ms) frontier_records = binned_records(frontier_records, *cfg.report_bin_ms);
        sort_by_latency(frontier_records);
        std::ofstream f(path("frontier.csv"));
        save_records(frontier_records, f);
    }
    {
        std::ofstream f(path("history.csv"));
        save_history(result.history, f);
    }
    {
        std::ofstream f(path("statistics.txt"));
        f << "trained=" << result.stats.trained << '\n'
          << "pruned=" << result.stats.pruned << '\n'
          << "ratio=" << format_double(result.stats.ratio) << '\n'
          << "iterations=" << result.stats.iterations << '\n'
          << "stop_reason=" << result.stats.stop_reason << '\n';
    }
    std::cout << "trained " << result.stats.trained << ", pruned " << result.stats.pruned
              << " (ratio " << format_double(result.stats.ratio) << "), stopped: "
              << result.stats.stop_reason << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Partial-order-pruning architecture search over latency-banded lattices"};
    app.require_subcommand(1);

    // shared option storage
    std::string table_path, arch_text, alphabet_spec = "64,128,256,512,1024";
    std::string kind_spec = "basic";
    int resolution = 224, classes = 1000, max_blocks = 32;

    // latency
    auto* cmd_latency = app.add_subcommand("latency", "Estimate whole-network latency");
    cmd_latency->add_option("--table", table_path)->required();
    cmd_latency->add_option("--arch", arch_text)->required();
    cmd_latency->add_option("--resolution", resolution);
    cmd_latency->add_option("--classes", classes);
    cmd_latency->add_option("--alphabet", alphabet_spec);

    // enumerate
    std::string out_path;
    double min_ms = 0.0, max_ms = 0.0;
    auto* cmd_enumerate = app.add_subcommand("enumerate", "List codes inside a latency band");
    cmd_enumerate->add_option("--table", table_path)->required();
    cmd_enumerate->add_option("--min-ms", min_ms)->required();
    cmd_enumerate->add_option("--max-ms", max_ms)->required();
    cmd_enumerate->add_option("--alphabet", alphabet_spec);
    cmd_enumerate->add_option("--kind", kind_spec);
    cmd_enumerate->add_option("--max-blocks", max_blocks);
    cmd_enumerate->add_option("--resolution", resolution);
    cmd_enumerate->add_option("--classes", classes);
    cmd_enumerate->add_option("--out", out_path);

    // precedes
    std::string code_a, code_b;
    auto* cmd_precedes = app.add_subcommand("precedes", "Test the strict precedence relation");
    cmd_precedes->add_option("--a", code_a)->required();
    cmd_precedes->add_option("--b", code_b)->required();
    cmd_precedes->add_option("--alphabet", alphabet_spec);

    // precedents
    std::string space_file, band_spec;
    bool list_precedents = false;
    auto* cmd_precedents = app.add_subcommand("precedents", "Count precedents within a space");
    cmd_precedents->add_option("--arch", arch_text)->required();
    cmd_precedents->add_option("--space-file", space_file);
    cmd_precedents->add_option("--table", table_path);
    cmd_precedents->add_option("--band", band_spec);
    cmd_precedents->add_option("--alphabet", alphabet_spec);
    cmd_precedents->add_option("--kind", kind_spec);
    cmd_precedents->add_option("--max-blocks", max_blocks);
    cmd_precedents->add_option("--resolution", resolution);
    cmd_precedents->add_option("--classes", classes);
    cmd_precedents->add_flag("--list", list_precedents);

    // search
    std::string space_kind = "backbone", evaluator_spec = "synthetic", latency_file, search_out;
    std::uint64_t seed = default_seed();
    int patience = 20, max_evals = std::numeric_limits<int>::max();
    double a_max = 0.8, gamma = 0.05, noise_sigma = 0.0, cmd_timeout = 600.0;
    std::optional<double> bin_ms;
    auto* cmd_search = app.add_subcommand("search", "Run the partial-order-pruning search");
    cmd_search->add_option("--space", space_kind)->check(CLI::IsMember({"backbone", "decoder"}));
    cmd_search->add_option("--table", table_path);
    cmd_search->add_option("--latency-file", latency_file);
    cmd_search->add_option("--band", band_spec);
    cmd_search->add_option("--evaluator", evaluator_spec);
    cmd_search->add_option("--seed", seed);
    cmd_search->add_option("--patience", patience);
    cmd_search->add_option("--max-evals", max_evals);
    cmd_search->add_option("--out", search_out)->required();
    cmd_search->add_option("--alphabet", alphabet_spec);
    cmd_search->add_option("--kind", kind_spec);
    cmd_search->add_option("--max-blocks", max_blocks);
    cmd_search->add_option("--resolution", resolution);
    cmd_search->add_option("--classes", classes);
    cmd_search->add_option("--bin-ms", [&bin_ms](const std::vector<std::string>& v) {
        bin_ms = parse_double(v.at(0), "bin width");
        return true;
    });
    cmd_search->add_option("--a-max", a_max);
    cmd_search->add_option("--gamma", gamma);
    cmd_search->add_option("--noise-sigma", noise_sigma);
    cmd_search->add_option("--cmd-timeout", cmd_timeout);

    // frontier
    std::string records_path;
    auto* cmd_frontier = app.add_subcommand("frontier", "Best speed/accuracy trade-off records");
    cmd_frontier->add_option("--records", records_path)->required();
    cmd_frontier->add_option("--bin-ms", [&bin_ms](const std::vector<std::string>& v) {
        bin_ms = parse_double(v.at(0), "bin width");
        return true;
    });
    cmd_frontier->add_option("--out", out_path);

    // check-assumption
    auto* cmd_check = app.add_subcommand("check-assumption",
                                         "Latency/accuracy deltas over comparable pairs");
    cmd_check->add_option("--records", records_path)->required();
    cmd_check->add_option("--alphabet", alphabet_spec);
    cmd_check->add_option("--out", out_path);

    // audit-table
    auto* cmd_audit = app.add_subcommand("audit-table", "Report latency monotonicity violations");
    cmd_audit->add_option("--table", table_path)->required();
    cmd_audit->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    if (cmd_latency->parsed()) {
        auto alphabet = parse_alphabet(alphabet_spec);
        auto table = load_table(table_path);
        auto code = parse_code(arch_text, alphabet);
        std::cout << format_double(estimate_latency(code, table, resolution, classes)) << '\n';
        return 0;
    }

    if (cmd_enumerate->parsed()) {
        auto table = load_table(table_path);
        EnumerationParams params{parse_alphabet(alphabet_spec),
                                 block_kind_from_string(kind_spec), resolution, classes,
                                 max_blocks};
        auto codes = enumerate_subspace({min_ms, max_ms}, table, params);
        std::vector<Record> rows;
        rows.reserve(codes.size());
        for (const auto& c : codes)
            rows.push_back({format_code(c), estimate_latency(c, table, resolution, classes), 0.0});
        sort_by_latency(rows);
        std::ofstream file;
        auto& out = open_output(file, out_path);
        out << "code,latency_ms\n";
        for (const auto& r : rows)
            out << csv_quote(r.code) << ',' << format_double(r.latency_ms) << '\n';
        return 0;
    }

    if (cmd_precedes->parsed()) {
        bool result;
        if (is_decoder_code(code_a) || is_decoder_code(code_b)) {
            result = decoder_precedes(parse_decoder(code_a), parse_decoder(code_b));
        } else {
            auto alphabet = parse_alphabet(alphabet_spec);
            result = precedes(parse_code(code_a, alphabet), parse_code(code_b, alphabet));
        }
        std::cout << (result ? "true" : "false") << '\n';
        return 0;
    }

    if (cmd_precedents->parsed()) {
        auto alphabet = parse_alphabet(alphabet_spec);
        auto code = parse_code(arch_text, alphabet);
        std::vector<ArchitectureCode> space;
        if (!space_file.empty()) {
            std::ifstream in(space_file);
            if (!in) throw DataError("cannot open space file '" + space_file + "'");
            std::string line;
            while (std::getline(in, line)) {
                std::string t = trim(line);
                if (t.empty() || t[0] == '#') continue;
                space.push_back(parse_code(t, alphabet));
            }
        } else if (!table_path.empty() && !band_spec.empty()) {
            auto table = load_table(table_path);
            EnumerationParams params{alphabet, block_kind_from_string(kind_spec), resolution,
                                     classes, max_blocks};
            space = enumerate_subspace(parse_band(band_spec), table, params);
        } else {
            throw ParseError("precedents needs --space-file or --table with --band");
        }
        std::cout << count_precedents(code, space) << '\n';
        if (list_precedents)
            for (const auto& m : space)
                if (precedes(m, code)) std::cout << format_code(m) << '\n';
        return 0;
    }

    if (cmd_search->parsed()) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.patience = patience;
        cfg.max_evaluations = max_evals;
        cfg.report_bin_ms = bin_ms;

        auto espec = EvaluatorSpec::parse(evaluator_spec);
        espec.synthetic = {a_max, gamma, noise_sigma, seed};
        espec.cmd_timeout_seconds = cmd_timeout;

        if (space_kind == "backbone") {
            if (table_path.empty() || band_spec.empty())
                throw ParseError("backbone search needs --table and --band");
            auto table = load_table(table_path);
            EnumerationParams params{parse_alphabet(alphabet_spec),
                                     block_kind_from_string(kind_spec), resolution, classes,
                                     max_blocks};
            auto space = make_backbone_space(parse_band(band_spec), table, params);

            if (espec.kind == "synthetic") {
                auto oracle = espec.synthetic;
                run_search_and_write(space,
                                     [oracle](const ArchitectureCode& c) {
                                         return synthetic_accuracy(c, oracle);
                                     },
                                     cfg, search_out);
            } else if (espec.kind == "replay") {
                auto replay = ReplayEvaluator::from_file(espec.argument);
                run_search_and_write(space,
                                     [&replay](const ArchitectureCode& c) {
                                         return replay.evaluate(format_code(c));
                                     },
                                     cfg, search_out);
            } else {
                ExternalCommand command{espec.argument, espec.cmd_timeout_seconds};
                run_search_and_write(space,
                                     [&command](const ArchitectureCode& c) {
                                         return external_accuracy(format_code(c), command);
                                     },
                                     cfg, search_out);
            }
        } else {
            if (latency_file.empty())
                throw ParseError("decoder search needs --latency-file (records format)");
            std::unordered_map<std::string, double> latency_by_code;
            for (const auto& r : load_records(latency_file))
                latency_by_code.emplace(r.code, r.latency_ms);

            auto all = enumerate_decoder_space(classes);
            if (!band_spec.empty()) {
                auto band = parse_band(band_spec);
                std::vector<DecoderCode> kept;
                for (const auto& c : all) {
                    auto it = latency_by_code.find(format_decoder(c));
                    if (it == latency_by_code.end())
                        throw DataError("no latency record for decoder code " +
                                        format_decoder(c));
                    if (it->second >= band.t_min && it->second <= band.t_max)
                        kept.push_back(c);
                }
                all = std::move(kept);
            }
            DecoderSpace space(std::move(all),
                               [&latency_by_code](const DecoderCode& c) {
                                   auto it = latency_by_code.find(format_decoder(c));
                                   if (it == latency_by_code.end())
                                       throw DataError("no latency record for decoder code " +
                                                       format_decoder(c));
                                   return it->second;
                               },
                               [](const DecoderCode& a, const DecoderCode& b) {
                                   return decoder_precedes(a, b);
                               },
                               [](const DecoderCode& c) { return format_decoder(c); });

            if (espec.kind == "synthetic") {
                auto oracle = espec.synthetic;
                run_search_and_write(space,
                                     [oracle](const DecoderCode& c) {
                                         return synthetic_decoder_accuracy(c, oracle);
                                     },
                                     cfg, search_out);
            } else if (espec.kind == "replay") {
                auto replay = ReplayEvaluator::from_file(espec.argument);
                run_search_and_write(space,
                                     [&replay](const DecoderCode& c) {
                                         return replay.evaluate(format_decoder(c));
                                     },
                                     cfg, search_out);
            } else {
                ExternalCommand command{espec.argument, espec.cmd_timeout_seconds};
                run_search_and_write(space,
                                     [&command](const DecoderCode& c) {
                                         return external_accuracy(format_decoder(c), command);
                                     },
                                     cfg, search_out);
            }
        }
        return 0;
    }

    if (cmd_frontier->parsed()) {
        auto loaded = load_records(records_path);
        std::vector<TrainedRecord<std::string>> records;
        for (const auto& r : loaded) records.push_back({r.code, r.latency_ms, r.accuracy, 0});
        auto front = frontier(records);
        std::vector<Record> rows;
        for (const auto& f : front) rows.push_back({f.code, f.latency_ms, f.accuracy});
        if (bin_ms) rows = binned_records(rows, *bin_ms);
        sort_by_latency(rows);
        std::ofstream file;
        save_records(rows, open_output(file, out_path));
        return 0;
    }

    if (cmd_check->parsed()) {
        auto loaded = load_records(records_path);
        std::vector<TrainedRecord<std::string>> records;
        for (const auto& r : loaded) records.push_back({r.code, r.latency_ms, r.accuracy, 0});

        bool decoder = !loaded.empty() && is_decoder_code(loaded.front().code);
        AssumptionReport report;
        if (decoder) {
            report = check_assumption(records,
                                      [](const std::string& a, const std::string& b) {
                                          return decoder_precedes(parse_decoder(a),
                                                                  parse_decoder(b));
                                      },
                                      [](const std::string& c) { return c; });
        } else {
            auto alphabet = parse_alphabet(alphabet_spec);
            report = check_assumption(records,
                                      [&alphabet](const std::string& a, const std::string& b) {
                                          return precedes(parse_code(a, alphabet),
                                                          parse_code(b, alphabet));
                                      },
                                      [](const std::string& c) { return c; });
        }
        std::ofstream file;
        write_assumption_report(report, open_output(file, out_path));
        return 0;
    }

    if (cmd_audit->parsed()) {
        auto table = load_table(table_path);
        auto report = audit_monotonicity(table);
        std::ofstream file;
        auto& out = open_output(file, out_path);
        out << "narrower,narrower_ms,wider,wider_ms\n";
        for (const auto& v : report.violations)
            out << csv_quote(to_string(v.narrower)) << ',' << format_double(v.narrower_ms) << ','
                << csv_quote(to_string(v.wider)) << ',' << format_double(v.wider_ms) << '\n';
        out << "# violations: " << report.violations.size() << '\n';
        out << "# pairs_checked: " << report.pairs_checked << '\n';
        return 0;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pop::EvaluatorError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const pop::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const pop::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

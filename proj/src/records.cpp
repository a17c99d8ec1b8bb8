#include "pop/records.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "pop/errors.hpp"
#include "pop/text_util.hpp"

namespace pop {

namespace {

const char* kRecordsHeader = "code,latency_ms,accuracy";

// Splits "<code>,rest" where the code may be double-quoted.
std::pair<std::string, std::string> take_code_field(const std::string& line, int lineno) {
    if (!line.empty() && line[0] == '"') {
        auto close = line.find('"', 1);
        if (close == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": unterminated quote");
        std::string code = line.substr(1, close - 1);
        std::string rest = line.substr(close + 1);
        if (!rest.empty() && rest[0] == ',') rest.erase(0, 1);
        return {code, rest};
    }
    auto comma = line.find(',');
    if (comma == std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": expected 3 fields");
    return {line.substr(0, comma), line.substr(comma + 1)};
}

} // namespace

std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

std::vector<Record> parse_records(std::istream& in) {
    std::vector<Record> records;
    std::set<std::string> seen;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_seen) {
            if (t != kRecordsHeader)
                throw ParseError("records header must be '" + std::string(kRecordsHeader) +
                                 "', got '" + t + "'");
            header_seen = true;
            continue;
        }
        auto [code, rest] = take_code_field(t, lineno);
        auto fields = split(rest, ',');
        if (fields.size() != 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected 3 fields");
        Record r;
        r.code = trim(code);
        r.latency_ms = parse_double(fields[0], "latency_ms");
        r.accuracy = parse_accuracy(fields[1]);
        if (r.latency_ms <= 0.0)
            throw DataError("line " + std::to_string(lineno) + ": non-positive latency");
        if (!seen.insert(r.code).second)
            throw DataError("line " + std::to_string(lineno) + ": duplicate code " + r.code);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<Record> load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open records file '" + path.string() + "'");
    try {
        return parse_records(in);
    } catch (const std::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_records(const std::vector<Record>& records, std::ostream& out) {
    out << kRecordsHeader << '\n';
    for (const auto& r : records)
        out << csv_quote(r.code) << ',' << format_double(r.latency_ms) << ','
            << format_double(r.accuracy) << '\n';
}

void save_history(const std::vector<HistoryRow>& rows, std::ostream& out) {
    out << "iteration,code,latency_ms,accuracy,trained,pruned,frontier_changed\n";
    for (const auto& r : rows)
        out << r.iteration << ',' << csv_quote(r.code) << ',' << format_double(r.latency_ms)
            << ',' << format_double(r.accuracy) << ',' << r.trained << ',' << r.pruned << ','
            << (r.frontier_changed ? 1 : 0) << '\n';
}

std::vector<Record> binned_records(const std::vector<Record>& records, double bin_ms) {
    if (bin_ms <= 0.0) throw DataError("bin width must be positive");
    std::map<long, Record> best;
    for (const auto& r : records) {
        long bin = static_cast<long>(std::floor(r.latency_ms / bin_ms));
        auto it = best.find(bin);
        if (it == best.end()) {
            best.emplace(bin, r);
            continue;
        }
        const Record& cur = it->second;
        if (r.accuracy > cur.accuracy ||
            (r.accuracy == cur.accuracy &&
             (r.latency_ms < cur.latency_ms ||
              (r.latency_ms == cur.latency_ms && r.code < cur.code))))
            it->second = r;
    }
    std::vector<Record> out;
    out.reserve(best.size());
    for (auto& [bin, r] : best) out.push_back(std::move(r));
    return out;
}

} // namespace pop

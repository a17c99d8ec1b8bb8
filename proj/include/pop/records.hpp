#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pop {

// One evaluated architecture as it appears in records files.
struct Record {
    std::string code;
    double latency_ms = 0.0;
    double accuracy = 0.0;
};

// File format: header code,latency_ms,accuracy; the code field is quoted
// (codes contain commas); accuracy accepts a '%' suffix on input and is
// always written as a fraction. Duplicate codes are rejected.
std::vector<Record> parse_records(std::istream& in);
std::vector<Record> load_records(const std::filesystem::path& path);
void save_records(const std::vector<Record>& records, std::ostream& out);

struct HistoryRow {
    int iteration = 0;
    std::string code;
    double latency_ms = 0.0;
    double accuracy = 0.0;
    int trained = 0;
    long pruned = 0;
    bool frontier_changed = false;
};

// Header: iteration,code,latency_ms,accuracy,trained,pruned,frontier_changed
void save_history(const std::vector<HistoryRow>& rows, std::ostream& out);

// Best accuracy within each latency bin of width bin_ms, one record per
// non-empty bin, sorted by latency.
std::vector<Record> binned_records(const std::vector<Record>& records, double bin_ms);

std::string csv_quote(const std::string& field);

} // namespace pop

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pop {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal form that keeps the value readable in CSV output.
std::string format_double(double v);

double parse_double(std::string_view s, std::string_view what);
int parse_int(std::string_view s, std::string_view what);

// Accepts a fraction in [0,1] or a percent with '%' suffix.
double parse_accuracy(std::string_view s);

} // namespace pop

#include "pop/text_util.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "pop/errors.hpp"

namespace pop {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_double(std::string_view s, std::string_view what) {
    std::string t = trim(s);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ParseError("bad " + std::string(what) + " '" + t + "'");
    return v;
}

int parse_int(std::string_view s, std::string_view what) {
    std::string t = trim(s);
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size())
        throw ParseError("bad " + std::string(what) + " '" + t + "'");
    return static_cast<int>(v);
}

double parse_accuracy(std::string_view s) {
    std::string t = trim(s);
    bool percent = !t.empty() && t.back() == '%';
    if (percent) t.pop_back();
    double v = parse_double(t, "accuracy");
    if (percent) v /= 100.0;
    if (v < 0.0 || v > 1.0)
        throw DataError("accuracy " + format_double(v) + " outside [0,1]");
    return v;
}

} // namespace pop

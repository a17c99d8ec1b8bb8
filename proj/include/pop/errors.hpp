#pragma once

#include <stdexcept>
#include <string>

namespace pop {

// Malformed textual input (architecture codes, table rows, record rows).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Semantically invalid data: missing lookup keys, duplicate entries,
// out-of-range values, absent records.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Accuracy oracle failure (missing replay record, external command error).
class EvaluatorError : public std::runtime_error {
public:
    explicit EvaluatorError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pop

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weft {

// Property text that does not parse.  line/column are 1-based; line refers to
// the position within the spec file when parsing one, else it is 1.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(message)), line(line), column(column) {}

    std::size_t line;
    std::size_t column;
};

// Malformed or inconsistent input data (traces, binary framing, timestamps).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace weft

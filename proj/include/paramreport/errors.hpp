#pragma once

#include <stdexcept>
#include <string>

namespace paramreport {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FetchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace paramreport

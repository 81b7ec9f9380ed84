#pragma once

#include <stdexcept>
#include <string>

namespace mftk {

// Bad or unreadable input: malformed records, invalid configuration,
// violated preconditions. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that is well-formed but numerically degenerate (constant series,
// all-zero fluctuations, failed fits). The CLI maps this to exit code 2.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure carrying the 1-based line number of the offending record.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mftk

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtwc {

// Bad arguments, malformed input files, violated invariants. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A size guard tripped (closure cap, brute-force enumeration cap). CLI exit code 3.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dtwc

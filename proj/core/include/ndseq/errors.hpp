#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndseq {

/// Input could not be parsed. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input parsed, but violates a structural requirement (self-loop, asymmetry,
/// multi-edge, empty graph, bad generator parameter, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ndseq

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpoly {

/// Malformed LPOLY input. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

/// An exhaustive computation was asked for more variables than the configured limit.
class LimitExceeded : public std::domain_error {
public:
    LimitExceeded(std::size_t requested, std::size_t limit)
        : std::domain_error("exhaustive enumeration over " + std::to_string(requested) +
                            " variables exceeds limit " + std::to_string(limit)),
          requested_(requested), limit_(limit) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t requested_;
    std::size_t limit_;
};

}  // namespace lpoly

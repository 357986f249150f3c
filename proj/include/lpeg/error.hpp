#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpeg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed grammar, regex or DFA input. Carries a 1-based source position
/// when one is known (line 0 means "no position").
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? message
                          : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A grammar that parsed but violates a structural requirement of the
/// operation it was handed to (not an LPEG, not well-formed, ...).
class GrammarError : public Error {
public:
    using Error::Error;
};

/// A configured budget (DFA states, recursion depth, enumeration size) was hit.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Internal invariant of the conversion pipeline broken. Seeing one of these
/// means a bug, not bad input.
class ConversionError : public Error {
public:
    using Error::Error;
};

} // namespace lpeg

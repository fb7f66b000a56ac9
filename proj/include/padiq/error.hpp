#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padiq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula text. Carries a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Input violates an operation's precondition (wrong prime, free variable
/// where none is allowed, capture during substitution, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured blow-up cap (residues, DNF literals) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace padiq

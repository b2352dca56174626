#pragma once

#include <stdexcept>
#include <string>

namespace epsum {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A denominator vanished at an evaluation point, or a Gamma function was evaluated at a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Input outside the supported class (non-integer-linear Gamma arguments, wrong variable, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An operation would need more epsilon orders than its inputs carry.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// A bounded search (operator order, candidate set) ended without a result.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// No pivot unknown generates the whole system.
class DegeneratePivotError : public Error {
public:
    using Error::Error;
};

}  // namespace epsum

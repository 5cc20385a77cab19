#ifndef FLTS_ERRORS_HPP
#define FLTS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flts {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax-level failure: malformed formula/program text or malformed JSON.
// Carries a 1-based line/column when the source position is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_ = 0;   // 0 = unknown
    std::size_t column_ = 0;
};

// Well-formed input that violates a semantic requirement: unknown state/action/prop,
// degree out of [0,1], duplicate transition, signature mismatch, bad parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An operation's precondition does not hold (e.g. a relation handed to the
// preservation test is not a simulation of the required kind).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace flts

#endif

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace setprop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions or sizes violate an operation's contract.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A set operation produced (or was given) an empty set.
class EmptySetError : public Error {
public:
    using Error::Error;
};

/// Invalid argument values (negative radius, nonpositive step, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Overflow or non-finite values. Propagation errors carry the step index.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
        : Error(step ? what + " (step " + std::to_string(*step) + ")" : what), step_(step) {}

    std::optional<std::size_t> step() const noexcept { return step_; }

private:
    std::optional<std::size_t> step_;
};

/// A matrix that must be invertible could not be factorized.
class FactorizationError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Requested flowpipe projection is not representable by its geometry.
class UnsupportedQueryError : public Error {
public:
    using Error::Error;
};

/// Not enough events (e.g. displacement maxima) in the data.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Estimates that should overlap do not; usually a too-coarse flowpipe.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace setprop

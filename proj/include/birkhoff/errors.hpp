#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace birkhoff {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A predicate set with unknown finiteness was passed to an operation that
/// needs tail enumeration.
struct UnknownFiniteness : Error {
    using Error::Error;
};

/// The below-continuity limit did not settle before the horizon.
struct TailNotConverged : Error {
    using Error::Error;
};

/// No finite upper bound on the tail contribution could be established.
struct NonSummableTail : Error {
    using Error::Error;
};

/// The underlying integral did not converge (p_norm contract).
struct NotConverged : Error {
    using Error::Error;
};

/// Two partition tails cannot be intersected in closed form.
struct IncompatibleTails : Error {
    using Error::Error;
};

/// A cell split is empty, overlapping, or does not cover the cell.
struct BadSplit : Error {
    using Error::Error;
};

/// A denominator function vanishes on a point of positive measure.
struct ZeroDenominator : Error {
    using Error::Error;
};

/// Ratio bounds or exponents outside the admissible domain.
struct BadBounds : Error {
    using Error::Error;
};

/// Expression evaluation failed (division by zero, non-finite result).
struct EvalError : Error {
    using Error::Error;
};

/// Parse failure; `position` is a 0-based byte offset into the input.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& what_arg)
        : Error(what_arg + " at position " + std::to_string(pos)), position(pos) {}
};

/// An identifier that is neither `n` nor a bound set name.
struct UnknownIdentifier : Error {
    std::string name;
    explicit UnknownIdentifier(const std::string& ident)
        : Error("unknown identifier '" + ident + "'"), name(ident) {}
};

/// Configuration file violates the schema; `path` is the offending field.
struct ConfigError : Error {
    std::string path;
    ConfigError(const std::string& field_path, const std::string& what_arg)
        : Error(field_path + ": " + what_arg), path(field_path) {}
};

}  // namespace birkhoff

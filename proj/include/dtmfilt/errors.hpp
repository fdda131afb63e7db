#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtmf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A parameter is outside its admissible range (m, p, dim, stride, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Points or clouds of incompatible ambient dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An input violates a structural precondition (subset declarations, face closure, ...).
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A resource guard was exceeded (exhaustive enumeration too large).
class SizeError : public Error {
public:
    using Error::Error;
};

/// The minimax solver did not certify its answer within the iteration budget.
/// Carries the best lower/upper bound pair on the optimum.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double lower, double upper)
        : Error(what + " (bounds [" + std::to_string(lower) + ", " + std::to_string(upper) + "])"),
          lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

}  // namespace dtmf

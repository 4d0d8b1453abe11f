#pragma once

#include <stdexcept>
#include <string>

namespace semiopt {

/// Base class of everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (DIMACS, NNF s-expressions, rational strings,
/// interpretation files).  Carries a 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
          line(line_no) {}

    int line;
};

/// A value fell outside the carrier of the semiring in use.
struct DomainError : Error {
    using Error::Error;
};

/// An argument violated a documented precondition.
struct ArgumentError : Error {
    using Error::Error;
};

/// A configured search budget was exhausted before an exact answer was
/// reached.  Never stands in for a wrong answer.
struct ResourceError : Error {
    using Error::Error;
};

} // namespace semiopt

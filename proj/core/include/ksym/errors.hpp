#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ksym {

/// Base class for every recoverable failure in the library.
/// The CLI maps these to exit code 1; anything else is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed expression or file input. Carries the byte offset of the
/// first offending character.
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

/// Variable index outside the owning chart's bounds.
struct IndexError : Error {
    using Error::Error;
};

/// Evaluation hit a singularity (log of nonpositive, division by zero, ...).
struct DomainError : Error {
    using Error::Error;
};

/// An assignment does not cover a free symbol of the expression.
struct MissingSymbolError : Error {
    using Error::Error;
};

/// A field or form lives on a different chart than the operation expects.
struct ChartMismatchError : Error {
    using Error::Error;
};

/// Legendre transformation is not invertible (singular velocity Hessian).
struct NotHyperregularError : Error {
    using Error::Error;
};

/// Lagrangian outside the class an operation supports (e.g. not v-quadratic).
struct UnsupportedFormError : Error {
    using Error::Error;
};

/// Constraint coefficient matrix below maximal rank at probe points.
struct RankDeficientError : Error {
    using Error::Error;
};

/// Iterative solver hit its iteration cap above the residual threshold.
struct NonConvergenceError : Error {
    using Error::Error;
};

/// Velocity Hessian is not positive-definite at the given parameters.
struct NotEllipticError : Error {
    using Error::Error;
};

/// Constraint projection system singular at some grid node.
struct StepRejectedError : Error {
    using Error::Error;
};

/// Time step violates the stability bound dt <= c*h^2.
struct CflViolationError : Error {
    using Error::Error;
};

/// Malformed problem file, field file or report file.
struct FormatError : Error {
    using Error::Error;
};

}  // namespace ksym

#pragma once

#include <stdexcept>
#include <string>

namespace qtensor {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand shapes do not conform.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Scalar-level domain violation (e.g. inverting zero).
struct DomainError : Error {
    using Error::Error;
};

// A multi-index or linear index lies outside its shape.
struct IndexOutOfRange : Error {
    using Error::Error;
};

// An iterative kernel hit its sweep cap before reaching tolerance.
struct ConvergenceFailure : Error {
    using Error::Error;
};

// Input fails the required eta-Hermitian symmetry.
struct NotEtaHermitian : Error {
    using Error::Error;
};

// Solvability conditions of a tensor equation are violated.
struct Inconsistent : Error {
    using Error::Error;
};

// A claimed particular solution does not satisfy its equation.
struct NotASolution : Error {
    using Error::Error;
};

// Malformed tensor file.
struct FormatError : Error {
    using Error::Error;
};

}  // namespace qtensor

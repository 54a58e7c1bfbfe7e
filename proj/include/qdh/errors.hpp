// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qdh {

/// Shape mismatch: non-square input, dims product != matrix side, arity errors.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (non-Hermitian,
/// parameter out of range, unphysical branch).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Matrix expected to be positive semidefinite has an eigenvalue below tolerance.
struct NotPsdError : DomainError {
    using DomainError::DomainError;
};

/// Probability table is negative or not normalized.
struct ProbabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation not available for this input shape (e.g. optimizer on d > 2 parties).
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds the supported budget (brute force on too many qubits).
struct ResourceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Iterative computation failed to converge within its budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what, int suggested = -1)
        : std::runtime_error(what), suggested_cutoff(suggested) {}
    int suggested_cutoff;  // -1 when not applicable
};

}  // namespace qdh

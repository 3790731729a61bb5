#ifndef CUBIC_ERRORS_HPP
#define CUBIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cubic {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input validation: bad dimensions, malformed files, precondition violations.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : ValidationError {
    explicit DimensionMismatch(const std::string& msg) : ValidationError(msg) {}
};

struct SingularMatrixError : ValidationError {
    explicit SingularMatrixError(const std::string& msg) : ValidationError(msg) {}
};

// Signals that a line lies entirely inside the hypersurface: the restricted
// binary cubic vanishes identically, so there is no residual divisor.
struct LineContainedError : Error {
    explicit LineContainedError(const std::string& msg) : Error(msg) {}
};

// Inertia-based classification requested for a degenerate quadratic form.
struct NotFullRankError : Error {
    explicit NotFullRankError(const std::string& msg) : Error(msg) {}
};

// A Kantorovich certificate was required but not granted.
struct CertificationRejected : Error {
    explicit CertificationRejected(const std::string& msg) : Error(msg) {}
};

// An accepted certificate was contradicted at runtime (iterate escaped the
// ball, replay mismatch, ...). Always a bug or a broken invariant, never
// a user error.
struct ContractViolation : Error {
    explicit ContractViolation(const std::string& msg) : Error(msg) {}
};

// Integer factorization needed for rational root extraction exceeded the
// trial-division budget and the cofactor is composite.
struct FactorizationLimit : Error {
    explicit FactorizationLimit(const std::string& msg) : Error(msg) {}
};

}  // namespace cubic

#endif

#pragma once
#include <stdexcept>
#include <string>

namespace rmlab {

// Parameter outside the documented domain (validation failure).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleError : DomainError {
    using DomainError::DomainError;
};

// Integer-adjacent parameter where the formula's branch is undefined.
struct BranchError : DomainError {
    using DomainError::DomainError;
};

// Bad CLI / API usage (empty input, missing option).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::length_error {
    using std::length_error::length_error;
};

// Numeric failures: non-convergence, lost accuracy, blow-up, inconsistent results.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AccuracyError : NumericError {
    AccuracyError(const std::string& what, double bound) : NumericError(what), achieved_bound(bound) {}
    double achieved_bound;
};

struct ConsistencyError : NumericError {
    using NumericError::NumericError;
};

} // namespace rmlab

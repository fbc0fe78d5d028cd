#pragma once

#include <stdexcept>
#include <string>

namespace oms {

/// Input outside the domain of an operation (negative argument, NaN sample,
/// misaligned lattice, mismatched grids, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// A series or quadrature was truncated beyond its validity range.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double bound)
        : std::runtime_error(what), bound_(bound) {}

    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

}  // namespace oms

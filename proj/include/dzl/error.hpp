#pragma once

#include <stdexcept>
#include <string>

namespace dzl {

/// Argument outside the region where an operation is defined (poles, ℜs ≤ 1, bad parameter ranges).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A table or object could not be built from its inputs.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative method gave up; carries the best point reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_re, double best_im, double best_residual)
        : std::runtime_error(what), best_re(best_re), best_im(best_im), best_residual(best_residual) {}
    double best_re;
    double best_im;
    double best_residual;
};

}  // namespace dzl

#pragma once

#include <stdexcept>
#include <string>

namespace raman3d {

/// Input violates a physical or mathematical precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive integration ran out of subdivisions. Carries the best value
/// reached so far together with its error estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_value, double error_estimate)
        : std::runtime_error(what), best_value(best_value), error_estimate(error_estimate) {}

    double best_value;
    double error_estimate;
};

/// A nonnegative-by-construction quantity came out more negative than the
/// numerical error budget allows.
class NumericalInstability : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root bracketing failed: no admissible solution in the search interval.
class NoSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace raman3d

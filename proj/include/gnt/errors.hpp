// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace gnt {

// Quadrature (or another numeric scheme) stopped short of the requested
// accuracy. Carries the best value found and the achieved error estimate.
class numeric_failure : public std::runtime_error {
public:
    numeric_failure(const std::string& what, double value, double error_estimate)
        : std::runtime_error(what + " (value=" + std::to_string(value) +
                             ", error_estimate=" + std::to_string(error_estimate) + ")"),
          value_(value),
          error_estimate_(error_estimate) {}

    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double value_;
    double error_estimate_;
};

// Truncated-Fock result still shifting when the cutoff is raised, with no
// room left to escalate.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deliberately out-of-scope feature (e.g. non-diagonal Bogoliubov transforms
// in the oracle).
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gnt

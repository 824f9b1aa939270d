#pragma once

#include <stdexcept>
#include <string>

namespace qimp {

/// Invalid physical parameters or configuration values.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mixing angle undefined: both atan2 arguments vanish.
class DegenerateAngle : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two Bohr frequencies sit between tol and 10*tol apart.
class AmbiguousClustering : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A state left the set of density matrices during evolution.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(const std::string& what, double time, double value)
        : std::runtime_error(what), time_(time), value_(value) {}

    double time() const noexcept { return time_; }
    double value() const noexcept { return value_; }

private:
    double time_;
    double value_;
};

}  // namespace qimp

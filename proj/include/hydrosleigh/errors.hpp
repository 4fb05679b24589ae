#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hydrosleigh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A body or fluid specification violates its invariants (e.g. m <= 0).
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// A total inertia tensor failed the positive-definiteness check.
class DegenerateTensorError : public Error {
public:
    using Error::Error;
};

/// A tensor is numerically singular (determinant below threshold).
class SingularTensorError : public Error {
public:
    using Error::Error;
};

/// Constraint covectors are linearly dependent; the multiplier system is singular.
class ConstraintDegeneracyError : public Error {
public:
    using Error::Error;
};

/// A constraint covector is zero or otherwise unusable.
class InvalidConstraintError : public Error {
public:
    using Error::Error;
};

/// An asymptotic quantity was requested outside its regime
/// (e.g. limit-circle radius with Z = 0).
class WrongRegimeError : public Error {
public:
    using Error::Error;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Input series do not share a time grid.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration is missing, conflicting, or malformed.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The integrator hit a non-finite derivative; carries the last good state.
class IntegrationAbortError : public Error {
public:
    IntegrationAbortError(const std::string& what, double t, std::vector<double> state)
        : Error(what), t_last(t), last_state(std::move(state)) {}

    double t_last;
    std::vector<double> last_state;
};

}  // namespace hydrosleigh

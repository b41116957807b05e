#pragma once

#include <stdexcept>
#include <string>

namespace bck {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside a quantity's domain (log/power potentials at q <= 0,
/// excluded exponents, invalid parameters, trajectory leaving the domain).
struct DomainError : Error {
    using Error::Error;
};

/// Exponential weight e^{2*gamma*t} requested beyond the overflow cap.
struct OverflowGuard : Error {
    using Error::Error;
};

/// Adaptive integrator could not meet the tolerance above the minimum step.
struct StepSizeUnderflow : Error {
    double t_last;          ///< time of the last accepted state
    explicit StepSizeUnderflow(const std::string& msg, double t)
        : Error(msg), t_last(t) {}
};

/// A first integral or chart was evaluated too close to its singular set.
struct SingularPoint : Error {
    using Error::Error;
};

/// A catalog entry was requested for a potential it does not bind.
struct PotentialMismatch : Error {
    using Error::Error;
};

/// A canonical chart was evaluated outside its validity window.
struct OutOfWindow : Error {
    using Error::Error;
};

/// Malformed scenario configuration.
struct SchemaError : Error {
    using Error::Error;
};

/// Operation not available for the requested family (e.g. closed-form
/// solution of a potential that has none in the catalog).
struct Unsupported : Error {
    using Error::Error;
};

}  // namespace bck

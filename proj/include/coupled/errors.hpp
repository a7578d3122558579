#pragma once

#include <stdexcept>
#include <string>

namespace coupled {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bundles or points whose shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Contraction constants outside their admissible region.
class InvalidConstants : public Error {
public:
    using Error::Error;
};

/// A point that lies outside the domain box it is evaluated on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bad sampler, grid, partition or model configuration.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Model parameters for which the model is not defined (e.g. isoelastic feasibility).
class FeasibilityError : public Error {
public:
    using Error::Error;
};

/// An operation that does not apply to the given system or report.
class NotApplicable : public Error {
public:
    using Error::Error;
};

/// Linear system without a unique solution.
class SingularSystem : public Error {
public:
    using Error::Error;
};

}  // namespace coupled

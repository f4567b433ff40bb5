#pragma once

#include <stdexcept>
#include <string>

namespace frdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or input violates a documented invariant.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

/// The orders of a problem do not belong to a single supported family.
class FamilyMismatch : public ConstraintViolation {
public:
    using ConstraintViolation::ConstraintViolation;
};

/// A series or iteration hit its cap before meeting the requested tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Numerical quadrature could not certify its result (tail too large,
/// refinement cap hit).
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// A result that must be real carried an imaginary residual above tolerance.
class RealnessViolation : public Error {
public:
    using Error::Error;
};

/// An explicit time stepper was asked to run outside its stability region.
class StabilityViolation : public Error {
public:
    using Error::Error;
};

/// A finite-precision quantity left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace frdiff

#pragma once

#include "frdiff/types.hpp"

namespace frdiff {

/// Parameters of the two-term relaxation kernel
///   K(t) = L^{-1}[ s^{rho-1} / (s^alpha + a s^beta + b) ](t)
///        = t^{alpha-rho} sum_r (-a)^r t^{(alpha-beta) r}
///            E^{r+1}_{alpha, alpha + (alpha-beta) r - rho + 1}(-b t^alpha).
struct KernelParams {
    double alpha = 1.0;
    double beta = 0.5;
    double rho = 1.0;
    double a = 0.0;
    Complex b{0.0, 0.0};
    double t = 1.0;
};

/// Hard cap on the number of r-terms.
inline constexpr int kMaxKernelTerms = 1000;

struct KernelValue {
    Complex value;
    TruncationReport report;
};

/// Throws ConstraintViolation unless alpha > beta > 0, alpha - rho > -1,
/// t > 0 and every field is finite.
void validate(const KernelParams& p);

/// (-a)^r t^{alpha - rho + (alpha-beta) r} E^{r+1}_{alpha, alpha+(alpha-beta)r-rho+1}(-b t^alpha).
Complex kernel_series_term(int r, const KernelParams& p, double tol = kDefaultTolerance);

/// Sum of kernel_series_term over r with adaptive truncation.
///
/// When the r-series is free of cancellation the terms are summed in double
/// precision. Otherwise (large a t^{alpha-beta} with alternating terms) the
/// whole double series is re-summed in MPFR arithmetic at a precision set by
/// the largest inner term. Throws NonConvergence when kMaxKernelTerms is
/// reached first.
KernelValue two_term_kernel(const KernelParams& p, double tol = kDefaultTolerance);

}  // namespace frdiff

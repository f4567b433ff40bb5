#pragma once

#include "frdiff/types.hpp"

namespace frdiff {

/// Index triple of the three-parameter (Prabhakar) Mittag-Leffler function
/// E^gamma_{alpha,beta}. alpha must be positive; beta may be any real.
struct PrabhakarParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
};

/// Radius inside which series evaluation is guaranteed to meet its tolerance.
inline constexpr double kSupportedRadius = 200.0;
/// Hard cap on the number of Taylor terms.
inline constexpr int kMaxSeriesTerms = 10000;
/// Upper bound on the working precision of the extended-precision path.
inline constexpr long kMaxPrecisionBits = 16384;

struct SeriesValue {
    Complex value;
    TruncationReport report;
};

/// Rising factorial (a)_n. Throws OverflowError if the product leaves the
/// double range and ConstraintViolation for n < 0.
double pochhammer(double a, int n);

/// 1/Gamma(x) as a total function: exactly zero at the non-positive integers.
double reciprocal_gamma(double x);

/// E^gamma_{alpha,beta}(z) = sum_n (gamma)_n z^n / (Gamma(n alpha + beta) n!).
///
/// Direct Taylor summation in a fixed term order. Mild cases are summed in
/// double precision with compensated accumulation; anything with noticeable
/// cancellation is re-summed in MPFR arithmetic at a precision derived from
/// the largest term, repeated until the rounding bound and the truncation
/// tail are both below tol * |value|. Arguments with |z| > kSupportedRadius
/// are still attempted but flagged as degraded. Throws NonConvergence when
/// kMaxSeriesTerms is reached first.
SeriesValue prabhakar_eval(const PrabhakarParams& params, Complex z,
                           double tol = kDefaultTolerance);

Complex prabhakar(const PrabhakarParams& params, Complex z, double tol = kDefaultTolerance);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
Complex mittag_leffler_two(double alpha, double beta, Complex z, double tol = kDefaultTolerance);

/// One-parameter Mittag-Leffler function E_alpha(z) = E_{alpha,1}(z).
Complex mittag_leffler_one(double alpha, Complex z, double tol = kDefaultTolerance);

}  // namespace frdiff

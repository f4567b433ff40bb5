#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace frdiff {

using Complex = std::complex<double>;

/// Default relative tolerance for series evaluations.
inline constexpr double kDefaultTolerance = 1e-12;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Bookkeeping attached to every truncated-series evaluation.
struct TruncationReport {
    int terms_used = 1;
    double tail_estimate = 0.0;  // absolute magnitude of the neglected tail
    bool degraded = false;       // outside the guaranteed-accuracy domain
    int precision_bits = 53;     // working precision of the final pass

    /// Fold another report into this one (worst case of each field).
    void merge(const TruncationReport& other) {
        terms_used = std::max(terms_used, other.terms_used);
        tail_estimate = std::max(tail_estimate, other.tail_estimate);
        degraded = degraded || other.degraded;
        precision_bits = std::max(precision_bits, other.precision_bits);
    }
};

}  // namespace frdiff

#pragma once

// Shared machinery behind every Prabhakar-series evaluation: a cheap
// double-precision scan of term magnitudes (used to choose the working
// precision and the stopping index) and an MPFR summation driven by it.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "frdiff/special_functions.hpp"
#include "mp_real.hpp"

namespace frdiff::detail {

/// Magnitude profile of the terms c_n z^n of E^gamma_{alpha,beta}(z).
struct SeriesProfile {
    double log_max = 0.0;    // natural log of the largest term magnitude
    double log_first = 0.0;  // natural log of the first nonzero term
    int peak = 0;            // beyond this index the terms decay monotonically
    int last = -1;           // final nonzero index of a terminating series
    int scan_end = 0;        // index where the scan stopped
    double max_gamma_arg = 0.0;
    bool empty = false;      // every coefficient is zero
};

/// Natural log of |1/Gamma(x)|, -inf at the poles of Gamma.
double log_abs_rgamma(double x);

bool is_gamma_pole(double x);

/// Scans log|c_n| + n*log_abs_z until the terms have decayed far below their
/// peak. log_abs_z may be -inf (z = 0).
SeriesProfile scan_prabhakar(const PrabhakarParams& p, double log_abs_z, int cap);

/// Rounds a requested bit count up to the cache granularity.
long quantize_precision(double bits);

/// beta as an exact linear form sum_i c_i m_i of doubles with integer
/// multipliers. Series families whose beta moves with an index (the kernel's
/// beta_r) must see the exact value, or the cancellation between
/// neighbouring members is destroyed by rounding.
struct BetaForm {
    std::array<double, 4> coef{};
    std::array<long, 4> mult{};
    int size = 0;

    static BetaForm of(double beta) {
        BetaForm f;
        f.add(beta, 1);
        return f;
    }
    BetaForm& add(double c, long m) {
        coef[static_cast<std::size_t>(size)] = c;
        mult[static_cast<std::size_t>(size)] = m;
        ++size;
        return *this;
    }
    /// Evaluates the form into out (exact when prec is large enough).
    void evaluate(MpReal& out) const;
    bool operator==(const BetaForm&) const = default;
};

/// Coefficients c_n = (gamma)_n / (n! Gamma(n alpha + beta)) at a fixed
/// precision, grown on demand. p.beta is ignored in favour of the exact form.
class CoefficientTable {
public:
    CoefficientTable(const PrabhakarParams& p, const BetaForm& beta, long prec);

    const MpReal& coefficient(int n);
    long precision() const { return prec_; }

private:
    void extend();

    PrabhakarParams params_;
    long prec_;
    std::vector<MpReal> coef_;
    MpReal pochhammer_ratio_;  // (gamma)_n / n! for the next n
    MpReal alpha_;
    MpReal beta_;
    MpReal gamma_;
    MpReal arg_;
    MpReal scratch_;
};

/// Per-thread cache keyed by (alpha, beta, gamma, precision). Results do not
/// depend on cache state: a table at a given precision is fully determined by
/// its key.
std::shared_ptr<CoefficientTable> coefficient_table_ptr(const PrabhakarParams& p, const BetaForm& beta,
                                                        long prec);

struct MpSeriesSum {
    MpComplex value;
    int terms = 0;
    double log2_max_term = -1e300;
    double log2_tail = -1e300;

    explicit MpSeriesSum(long prec) : value(prec) {}
};

/// Sums c_n z^n at precision prec. Stops at the first nonzero term past
/// profile.peak whose magnitude is below 2^log2_abs_stop (or at the final
/// index of a terminating series). Throws NonConvergence at the term cap.
/// beta is taken from the exact form; p.beta only needs to approximate it.
MpSeriesSum sum_prabhakar_mp(const PrabhakarParams& p, const BetaForm& beta, const MpComplex& z, long prec,
                             const SeriesProfile& profile, double log2_abs_stop, int cap);

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    static void step(double& s, double& c, double x) {
        const double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    void add(Complex x) {
        step(re, cre, x.real());
        step(im, cim, x.imag());
    }
    Complex value() const { return {re + cre, im + cim}; }
};

// log2 of the first-order rounding bound of an MPFR pass.
inline double log2_rounding_bound(double log2_max_term, int terms, long prec) {
    const double n = std::max(terms, 1);
    return log2_max_term + std::log2((4.0 * n + 10.0) * n) - static_cast<double>(prec);
}

inline long choose_precision(double log2_max, double log2_value, double tol, int terms) {
    const double n = std::max(terms, 16);
    const double bits = (log2_max - log2_value) + std::log2(1.0 / tol) +
                        std::log2((4.0 * n + 10.0) * n) + 16.0;
    return quantize_precision(std::max(bits, 64.0));
}

}  // namespace frdiff::detail

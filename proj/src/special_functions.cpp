#include "frdiff/special_functions.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "frdiff/errors.hpp"
#include "prabhakar_series.hpp"

namespace frdiff {

namespace {

using detail::MpComplex;
using detail::CompensatedSum;
using detail::SeriesProfile;
using detail::choose_precision;
using detail::log2_rounding_bound;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn2 = 0.69314718055994530942;
constexpr int kMaxPasses = 8;

void validate(const PrabhakarParams& p, Complex z, double tol) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
        throw ConstraintViolation("Mittag-Leffler: alpha must be a finite positive number, got " +
                                  std::to_string(p.alpha));
    }
    if (!std::isfinite(p.beta) || !std::isfinite(p.gamma)) {
        throw ConstraintViolation("Mittag-Leffler: beta and gamma must be finite");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw ConstraintViolation("Mittag-Leffler: tol must be a finite positive number");
    }
    if (!is_finite(z)) throw ConstraintViolation("Mittag-Leffler: argument must be finite");
}

struct DoubleAttempt {
    Complex value;
    double rounding_bound = 0.0;
    double tail = 0.0;
    int terms = 0;
    bool finite = true;
};

// Double-precision summation with a running first-order rounding bound.
std::optional<DoubleAttempt> sum_double(const PrabhakarParams& p, Complex z, double tol,
                                        const SeriesProfile& prof) {
    if (prof.max_gamma_arg > 170.0 || prof.log_max > 650.0) return std::nullopt;
    DoubleAttempt out;
    CompensatedSum acc;
    Complex power{1.0, 0.0};
    double ratio = 1.0;  // (gamma)_n / n!
    double prev = -1.0;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        if (n > 0) {
            ratio *= (p.gamma + n - 1) / n;
            power *= z;
        }
        const double c = ratio * reciprocal_gamma(n * p.alpha + p.beta);
        const Complex term = c * power;
        if (!is_finite(term) || !std::isfinite(c)) return std::nullopt;
        acc.add(term);
        const double mag = std::abs(term);
        out.rounding_bound += (3.0 * n + 10.0) * kEps * mag;
        out.terms = n + 1;
        if (prof.last >= 0 && n >= prof.last) return out.value = acc.value(), out;
        const double quiet = 1e-3 * tol * std::abs(acc.value());
        if (n > prof.peak && mag > 0.0 && mag < quiet && prev > mag) {
            const double q = mag / prev;
            out.tail = mag * q / (1.0 - q);
            if (out.tail < quiet) {
                out.value = acc.value();
                return out;
            }
        }
        if (n > prof.peak && mag == 0.0 && ratio == 0.0) return out.value = acc.value(), out;
        if (mag > 0.0) prev = mag;
    }
    return std::nullopt;
}

}  // namespace

double pochhammer(double a, int n) {
    if (n < 0) throw ConstraintViolation("pochhammer: n must be nonnegative");
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
        prod *= a + k;
        if (prod == 0.0) return 0.0;
        if (!std::isfinite(prod)) {
            throw OverflowError("pochhammer: (" + std::to_string(a) + ")_" + std::to_string(n) +
                                " exceeds the double range");
        }
    }
    return prod;
}

double reciprocal_gamma(double x) {
    if (detail::is_gamma_pole(x)) return 0.0;
    if (x > 171.7) return 0.0;
    const double r = 1.0 / std::tgamma(x);
    if (!std::isfinite(r)) throw OverflowError("reciprocal_gamma: 1/Gamma(" + std::to_string(x) + ") overflows");
    return r;
}

SeriesValue prabhakar_eval(const PrabhakarParams& p, Complex z, double tol) {
    validate(p, z, tol);
    SeriesValue out;
    out.report.degraded = std::abs(z) > kSupportedRadius;
    if (z == Complex{0.0, 0.0}) {
        out.value = reciprocal_gamma(p.beta);
        return out;
    }
    const SeriesProfile prof = detail::scan_prabhakar(p, std::log(std::abs(z)), kMaxSeriesTerms);
    if (prof.empty) {
        out.value = 0.0;
        return out;
    }
    if (prof.last < 0 && prof.scan_end >= kMaxSeriesTerms) {
        throw NonConvergence("Mittag-Leffler: more than " + std::to_string(kMaxSeriesTerms) +
                             " terms needed for |z| = " + std::to_string(std::abs(z)));
    }

    double log2_guess = prof.log_max / kLn2 - 64.0;
    if (auto d = sum_double(p, z, tol, prof)) {
        const double mag = std::abs(d->value);
        if (d->rounding_bound + d->tail <= tol * mag) {
            out.value = d->value;
            out.report.terms_used = d->terms;
            out.report.tail_estimate = d->tail;
            return out;
        }
        if (mag > 4.0 * d->rounding_bound) log2_guess = std::log2(mag / 2.0);
        else if (d->rounding_bound > 0.0) log2_guess = std::min(log2_guess, std::log2(d->rounding_bound) - 16.0);
    }

    // Extended precision: refine the working precision until both the
    // rounding bound and the truncation tail sit below tol * |value|.
    long prec = choose_precision(prof.log_max / kLn2, log2_guess, tol, prof.scan_end + 1);
    const double log2_tol = std::log2(tol);
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        prec = std::min(prec, kMaxPrecisionBits);
        const MpComplex zmp(prec, z);
        const auto sum = detail::sum_prabhakar_mp(p, detail::BetaForm::of(p.beta), zmp, prec, prof, log2_guess + log2_tol - 6.0,
                                                  kMaxSeriesTerms);
        const double log2_val = sum.value.log2_abs();
        const double log2_round = log2_rounding_bound(sum.log2_max_term, sum.terms, prec);
        const bool resolved = log2_val > std::max(log2_round, sum.log2_tail) + 2.0;
        const bool ok = resolved && log2_round <= log2_val + log2_tol - 1.0 &&
                        sum.log2_tail <= log2_val + log2_tol - 1.0;
        const bool at_cap = prec >= kMaxPrecisionBits;
        if (ok || (at_cap && out.report.degraded)) {
            out.value = sum.value.to_complex();
            if (!is_finite(out.value)) {
                throw OverflowError("Mittag-Leffler: value exceeds the double range at |z| = " +
                                    std::to_string(std::abs(z)));
            }
            out.report.terms_used = sum.terms;
            out.report.tail_estimate = std::exp2(sum.log2_tail);
            out.report.precision_bits = static_cast<int>(prec);
            return out;
        }
        if (at_cap) break;
        // Unresolved values lie below the noise floor: lower the guess
        // geometrically so deep cancellation is found in a few passes.
        log2_guess = resolved ? log2_val - 1.0
                              : log2_guess - std::max(64.0, 2.0 * (sum.log2_max_term - log2_guess));
        const long next = choose_precision(sum.log2_max_term, log2_guess, tol, sum.terms);
        prec = std::max(next, prec + 64);
    }
    throw NonConvergence("Mittag-Leffler: could not reach relative tolerance " + std::to_string(tol) +
                         " within " + std::to_string(kMaxPrecisionBits) + " bits at |z| = " +
                         std::to_string(std::abs(z)));
}

Complex prabhakar(const PrabhakarParams& params, Complex z, double tol) {
    return prabhakar_eval(params, z, tol).value;
}

Complex mittag_leffler_two(double alpha, double beta, Complex z, double tol) {
    return prabhakar_eval({alpha, beta, 1.0}, z, tol).value;
}

Complex mittag_leffler_one(double alpha, Complex z, double tol) {
    return mittag_leffler_two(alpha, 1.0, z, tol);
}

}  // namespace frdiff

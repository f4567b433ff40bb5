#include "frdiff/relaxation_kernel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frdiff/errors.hpp"
#include "frdiff/special_functions.hpp"
#include "prabhakar_series.hpp"

namespace frdiff {

namespace {

using detail::CompensatedSum;
using detail::MpComplex;
using detail::MpReal;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxPasses = 8;
// Consecutive negligible r-terms required before the ratio test is trusted.
constexpr int kQuietRun = 3;

// Static description of the r-th term: its Prabhakar indices, prefactor and
// a magnitude bound from the double scan.
struct RTerm {
    int r = 0;
    PrabhakarParams params;
    double exponent = 0.0;  // power of t in the prefactor
    detail::BetaForm exponent_form;  // exponent, exactly
    detail::BetaForm beta_form;      // exponent + 1, exactly
    double log2_pref = 0.0;
    detail::SeriesProfile prof;
    double log2_bound = -kInf;  // log2 of an estimate of max |T_r|
};

RTerm describe(int r, const KernelParams& p, double log_abs_z) {
    RTerm d;
    d.r = r;
    const double gap = p.alpha - p.beta;
    d.params = {p.alpha, p.alpha + gap * r - p.rho + 1.0, static_cast<double>(r) + 1.0};
    d.exponent = p.alpha - p.rho + gap * r;
    d.exponent_form.add(p.alpha, r + 1L).add(p.beta, -static_cast<long>(r)).add(p.rho, -1);
    d.beta_form = d.exponent_form;
    d.beta_form.add(1.0, 1);
    d.log2_pref = (r == 0 ? 0.0 : r * std::log2(std::fabs(p.a))) + d.exponent * std::log2(p.t);
    d.prof = detail::scan_prabhakar(d.params, log_abs_z, kMaxSeriesTerms);
    if (!d.prof.empty) {
        d.log2_bound = d.log2_pref + d.prof.log_max / kLn2 + std::log2(d.prof.scan_end + 1.0);
    }
    return d;
}

// Tracks the r-series stopping rule: past the peak of the magnitude bounds,
// kQuietRun consecutive terms below a floor, then a ratio-test tail.
class RStop {
public:
    // Returns the tail estimate (same units as mag) when the loop may stop.
    std::optional<double> update(int r, double bound, double mag, double floor) {
        if (bound > best_bound_) {
            best_bound_ = bound;
            best_r_ = r;
        }
        quiet_ = (r > best_r_ && mag <= floor) ? quiet_ + 1 : 0;
        std::optional<double> tail;
        if (quiet_ >= kQuietRun) {
            if (mag == 0.0) {
                tail = 0.0;
            } else if (prev_ > 0.0 && mag < prev_) {
                const double q = mag / prev_;
                tail = mag * q / (1.0 - q);
            }
        }
        prev_ = mag;
        return tail;
    }

private:
    double best_bound_ = -kInf;
    int best_r_ = 0;
    int quiet_ = 0;
    double prev_ = -1.0;
};

std::string describe_params(const KernelParams& p) {
    return "alpha=" + std::to_string(p.alpha) + " beta=" + std::to_string(p.beta) +
           " rho=" + std::to_string(p.rho) + " a=" + std::to_string(p.a) + " t=" + std::to_string(p.t);
}

[[noreturn]] void throw_cap(const KernelParams& p) {
    throw NonConvergence("two-term kernel: r-series cap " + std::to_string(kMaxKernelTerms) +
                         " reached with tail above tolerance (" + describe_params(p) + ")");
}

double prefactor(int r, const KernelParams& p, double exponent) {
    return (r == 0 ? 1.0 : std::pow(-p.a, r)) * std::pow(p.t, exponent);
}

struct FastResult {
    std::optional<KernelValue> value;  // set when the error budget was met
    double magnitude = 0.0;
    double error = kInf;
};

// Double-precision r-summation with each Prabhakar value at 0.1 * tol.
FastResult sum_fast(const KernelParams& p, Complex z, double tol) {
    const double log_abs_z = std::log(std::abs(z));
    const double inner_tol = 0.1 * tol;
    FastResult out;
    CompensatedSum acc;
    RStop stop;
    TruncationReport report;
    double err = 0.0;
    for (int r = 0; r < kMaxKernelTerms; ++r) {
        const RTerm d = describe(r, p, log_abs_z);
        Complex term{0.0, 0.0};
        if (!d.prof.empty) {
            const SeriesValue sv = prabhakar_eval(d.params, z, inner_tol);
            const double pref = prefactor(r, p, d.exponent);
            term = pref * sv.value;
            if (!is_finite(term)) return out;
            err += std::abs(term) * (inner_tol + 8.0 * kEps) + std::fabs(pref) * sv.report.tail_estimate;
            report.merge(sv.report);
        }
        acc.add(term);
        const double s = std::abs(acc.value());
        const auto tail = stop.update(r, d.log2_bound, std::abs(term), tol * s);
        if (tail) {
            out.magnitude = s;
            out.error = err + *tail;
            if (out.error <= tol * s) {
                report.terms_used = r + 1;
                report.tail_estimate = *tail;
                out.value = KernelValue{acc.value(), report};
            }
            return out;
        }
    }
    return out;
}

// Whole double series in MPFR: sum_r pref_r * sum_n c_{r,n} z^n.
KernelValue sum_mp(const KernelParams& p, Complex z, double tol, double log2_guess) {
    const double log_abs_z = std::log(std::abs(z));
    const double log2_tol = std::log2(tol);
    const bool degraded = std::abs(z) > kSupportedRadius;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        // r-range from the magnitude bounds alone.
        std::vector<RTerm> terms;
        RStop stop;
        double log2_r_tail = -kInf;
        double log2_max = -kInf;
        int inner_estimate = 0;
        for (int r = 0;; ++r) {
            if (r >= kMaxKernelTerms) throw_cap(p);
            RTerm d = describe(r, p, log_abs_z);
            const double bound = d.log2_bound;
            if (!d.prof.empty) {
                log2_max = std::max(log2_max, d.log2_pref + d.prof.log_max / kLn2);
                inner_estimate += d.prof.scan_end + 1;
            }
            terms.push_back(std::move(d));
            const double mag = std::exp2(bound - log2_guess);  // scaled to keep the range
            const auto tail = stop.update(r, bound, mag, std::exp2(log2_tol - 6.0));
            if (tail) {
                log2_r_tail = *tail > 0.0 ? std::log2(*tail) + log2_guess : -kInf;
                break;
            }
        }

        const long prec = std::min(
            detail::choose_precision(log2_max, log2_guess, tol, inner_estimate), kMaxPrecisionBits);
        const MpComplex zmp(prec, z);
        MpComplex total(prec);
        MpComplex scaled(prec);
        MpReal pref(prec);
        MpReal tmp(prec);
        const MpReal t_mp(prec, p.t);
        const MpReal neg_a(prec, -p.a);
        double log2_actual_max = -kInf;
        double inner_tails = 0.0;  // in units of 2^log2_guess
        int inner_terms = 0;
        for (const RTerm& d : terms) {
            if (d.prof.empty) continue;
            const double stop_at = log2_guess + log2_tol - 8.0 - d.log2_pref;
            const auto inner =
                detail::sum_prabhakar_mp(d.params, d.beta_form, zmp, prec, d.prof, stop_at, kMaxSeriesTerms);
            // pref = (-a)^r t^{alpha - rho + (alpha - beta) r}
            d.exponent_form.evaluate(tmp);
            mpfr_pow(pref.get(), t_mp.get(), tmp.get(), MPFR_RNDN);
            if (d.r > 0) {
                mpfr_pow_ui(tmp.get(), neg_a.get(), static_cast<unsigned long>(d.r), MPFR_RNDN);
                mpfr_mul(pref.get(), pref.get(), tmp.get(), MPFR_RNDN);
            }
            scale(scaled, pref, inner.value);
            add_to(total, scaled);
            log2_actual_max = std::max(log2_actual_max, inner.log2_max_term + d.log2_pref);
            inner_tails += std::exp2(inner.log2_tail + d.log2_pref - log2_guess);
            inner_terms += inner.terms;
        }

        const double log2_val = total.log2_abs();
        const double log2_round = detail::log2_rounding_bound(log2_actual_max, inner_terms, prec) +
                                  std::log2(static_cast<double>(terms.size()));
        const double tails = inner_tails + (log2_r_tail > -kInf ? std::exp2(log2_r_tail - log2_guess) : 0.0);
        const double log2_tail = tails > 0.0 ? std::log2(tails) + log2_guess : -kInf;
        const double noise = std::max(log2_round, log2_tail);
        const bool resolved = log2_val > noise + 2.0;
        const bool ok = resolved && noise <= log2_val + log2_tol - 1.0;
        const bool at_cap = prec >= kMaxPrecisionBits;
        if (ok || (at_cap && degraded)) {
            KernelValue out{total.to_complex(), {}};
            if (!is_finite(out.value)) throw OverflowError("two-term kernel: value exceeds the double range");
            out.report.terms_used = static_cast<int>(terms.size());
            out.report.tail_estimate = log2_tail > -kInf ? std::exp2(log2_tail) : 0.0;
            out.report.precision_bits = static_cast<int>(prec);
            out.report.degraded = degraded;
            return out;
        }
        if (at_cap) break;
        log2_guess = resolved ? log2_val - 1.0 : log2_guess - std::max(64.0, 2.0 * (log2_max - log2_guess));
    }
    throw NonConvergence("two-term kernel: could not reach relative tolerance within " +
                         std::to_string(kMaxPrecisionBits) + " bits (" + describe_params(p) + ")");
}

}  // namespace

void validate(const KernelParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.rho) ||
        !std::isfinite(p.a) || !is_finite(p.b) || !std::isfinite(p.t)) {
        throw ConstraintViolation("kernel parameters must be finite");
    }
    if (!(p.beta > 0.0 && p.alpha > p.beta)) {
        throw ConstraintViolation("kernel requires alpha > beta > 0 (" + describe_params(p) + ")");
    }
    if (!(p.alpha - p.rho > -1.0)) {
        throw ConstraintViolation("kernel requires alpha - rho > -1 (" + describe_params(p) + ")");
    }
    if (!(p.t > 0.0)) throw ConstraintViolation("kernel requires t > 0");
}

Complex kernel_series_term(int r, const KernelParams& p, double tol) {
    validate(p);
    if (r < 0) throw ConstraintViolation("kernel term index must be nonnegative");
    if (r > 0 && p.a == 0.0) return {0.0, 0.0};
    const double gap = p.alpha - p.beta;
    const double exponent = p.alpha - p.rho + gap * r;
    const PrabhakarParams params{p.alpha, p.alpha + gap * r - p.rho + 1.0, static_cast<double>(r) + 1.0};
    const Complex z = -p.b * std::pow(p.t, p.alpha);
    return prefactor(r, p, exponent) * prabhakar(params, z, tol);
}

KernelValue two_term_kernel(const KernelParams& p, double tol) {
    validate(p);
    if (!(tol > 0.0)) throw ConstraintViolation("kernel tolerance must be positive");
    const Complex z = -p.b * std::pow(p.t, p.alpha);

    if (p.a == 0.0) {
        const PrabhakarParams params{p.alpha, p.alpha - p.rho + 1.0, 1.0};
        const SeriesValue sv = prabhakar_eval(params, z, tol);
        const double pref = std::pow(p.t, p.alpha - p.rho);
        return {pref * sv.value,
                {sv.report.terms_used, pref * sv.report.tail_estimate, sv.report.degraded,
                 sv.report.precision_bits}};
    }

    const FastResult fast = sum_fast(p, z, tol);
    if (fast.value) return *fast.value;

    // Starting guess for log2|K| for the extended-precision pass.
    double log2_guess;
    if (fast.magnitude > 4.0 * fast.error) {
        log2_guess = std::log2(fast.magnitude) - 1.0;
    } else if (std::isfinite(fast.error) && fast.error > 0.0) {
        log2_guess = std::log2(fast.error) - 32.0;
    } else {
        log2_guess = std::log2(std::pow(p.t, p.alpha - p.rho)) - 64.0;
    }
    return sum_mp(p, z, tol, log2_guess);
}

}  // namespace frdiff

#include <cmath>
#include <ios>
#include <string>

#include "frdiff/errors.hpp"
#include "frdiff/oracles.hpp"
#include "precision_guard.hpp"

namespace frdiff::oracle {

namespace bmp = boost::multiprecision;

namespace {

constexpr int kMaxTerms = 400000;
constexpr unsigned kMaxDigits = 4000;

// log10 of the largest |term|, from a double-precision scan.
double log10_peak(const PrabhakarParams& p, double abs_z) {
    double best = -1e300, log_poch = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        if (n > 0) {
            const double f = p.gamma + n - 1;
            if (f == 0.0) break;
            log_poch += std::log(std::fabs(f)) - std::log(static_cast<double>(n));
        }
        const double x = n * p.alpha + p.beta;
        if (x <= 0.0 && x == std::floor(x)) continue;
        int sign = 0;
        const double L = log_poch - lgamma_r(x, &sign) + n * std::log(abs_z);
        best = std::max(best, L);
        if (x > 2.0 && L < best - 60.0) break;
    }
    return best / std::log(10.0);
}

MpC sum_at(const PrabhakarParams& p, Complex z, unsigned digits10) {
    detail::PrecisionGuard guard(digits10);
    const MpC zz = from_complex(z);
    const Real alpha(p.alpha), beta(p.beta), gamma(p.gamma);
    const Real eps = bmp::pow(Real(10), -static_cast<int>(digits10));
    MpC sum{Real(0), Real(0)};
    MpC power{Real(1), Real(0)};
    Real ratio(1);  // (gamma)_n / n!
    Real peak(0);
    for (int n = 0; n < kMaxTerms; ++n) {
        if (n > 0) {
            ratio *= (gamma + (n - 1)) / n;
            power = power * zz;
        }
        if (ratio == 0) return sum;  // terminating series
        const Real x = alpha * n + beta;
        MpC term{Real(0), Real(0)};
        if (!(x <= 0 && x == bmp::floor(x))) term = (ratio / bmp::tgamma(x)) * power;
        sum = sum + term;
        const Real mag = bmp::abs(term.re) + bmp::abs(term.im);
        peak = bmp::max(peak, mag);
        if (x > 2 && n > 2 && mag < peak && mag <= eps * peak && mag <= eps * (bmp::abs(sum.re) + bmp::abs(sum.im))) {
            return sum;
        }
    }
    throw NonConvergence("highprec_series: term cap reached");
}

std::string format(const Real& v, int digits) {
    return v.str(static_cast<std::streamsize>(digits - 1), std::ios_base::scientific);
}

}  // namespace

HighPrecValue highprec_series(const PrabhakarParams& p, Complex z, int digits) {
    if (digits < 1 || digits > 60) throw ConstraintViolation("highprec_series: digits must lie in [1, 60]");
    if (!(std::abs(z) <= 500.0)) throw ConstraintViolation("highprec_series: |z| must be <= 500");
    if (!(p.alpha > 0.0)) throw ConstraintViolation("highprec_series: alpha must be > 0");
    if (z == Complex{0.0, 0.0}) {
        const bool pole = p.beta <= 0.0 && p.beta == std::floor(p.beta);
        const double v = pole ? 0.0 : 1.0 / std::tgamma(p.beta);
        return {{v, 0.0}, std::to_string(v), "0"};
    }
    const double peak = std::max(0.0, log10_peak(p, std::abs(z)));
    auto work = static_cast<unsigned>(digits + 20 + std::ceil(peak));
    MpC low = sum_at(p, z, work);
    while (work <= kMaxDigits) {
        const unsigned higher = work + std::max(30u, work / 2);
        MpC high = sum_at(p, z, higher);
        detail::PrecisionGuard guard(higher);
        const Real diff = bmp::abs(high.re - low.re) + bmp::abs(high.im - low.im);
        const Real size = bmp::abs(high.re) + bmp::abs(high.im);
        if (diff <= bmp::pow(Real(10), -(digits + 2)) * size) {
            return {to_complex(high), format(high.re, digits), format(high.im, digits)};
        }
        low = std::move(high);
        work = higher;
    }
    throw NonConvergence("highprec_series: working precision cap reached before two settings agreed");
}

}  // namespace frdiff::oracle

#pragma once

// Thin RAII layer over MPFR used by the extended-precision series paths.

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <utility>

#include "frdiff/types.hpp"

namespace frdiff::detail {

class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    MpReal(mpfr_prec_t prec, double x) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    MpReal(const MpReal& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    MpReal(MpReal&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    MpReal& operator=(const MpReal& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// log2|x|, -inf for zero.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::fabs(m)) + static_cast<double>(e);
    }

private:
    mpfr_t v_;
};

struct MpComplex {
    MpReal re;
    MpReal im;

    explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    MpComplex(mpfr_prec_t prec, Complex z) : re(prec, z.real()), im(prec, z.imag()) {}

    Complex to_complex() const { return {re.to_double(), im.to_double()}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    double log2_abs() const {
        const double a = re.log2_abs();
        const double b = im.log2_abs();
        const double hi = std::max(a, b);
        if (std::isinf(hi)) return hi;
        const double lo = std::min(a, b);
        return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
    }
};

/// out = x * y; out must not alias x or y.
inline void mul(MpComplex& out, const MpComplex& x, const MpComplex& y) {
    mpfr_fmms(out.re.get(), x.re.get(), y.re.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_fmma(out.im.get(), x.re.get(), y.im.get(), x.im.get(), y.re.get(), MPFR_RNDN);
}

/// out = c * x for real c; out may alias x.
inline void scale(MpComplex& out, const MpReal& c, const MpComplex& x) {
    mpfr_mul(out.re.get(), x.re.get(), c.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), x.im.get(), c.get(), MPFR_RNDN);
}

inline void add_to(MpComplex& acc, const MpComplex& x) {
    mpfr_add(acc.re.get(), acc.re.get(), x.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), x.im.get(), MPFR_RNDN);
}

inline void set_precision(MpComplex& z, mpfr_prec_t prec) {
    mpfr_set_prec(z.re.get(), prec);
    mpfr_set_prec(z.im.get(), prec);
}

}  // namespace frdiff::detail

#include <mutex>

#include "frdiff/oracles.hpp"
#include "precision_guard.hpp"

namespace frdiff::oracle {

MpC operator+(const MpC& x, const MpC& y) { return {x.re + y.re, x.im + y.im}; }
MpC operator-(const MpC& x, const MpC& y) { return {x.re - y.re, x.im - y.im}; }
MpC operator*(const MpC& x, const MpC& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
MpC operator*(const Real& c, const MpC& x) { return {c * x.re, c * x.im}; }

MpC operator/(const MpC& x, const MpC& y) {
    const Real d = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
}

MpC exp(const MpC& z) {
    const Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

MpC log(const MpC& z) {
    const Real mag = boost::multiprecision::sqrt(z.re * z.re + z.im * z.im);
    return {boost::multiprecision::log(mag), boost::multiprecision::atan2(z.im, z.re)};
}

MpC pow(const MpC& z, const Real& p) {
    if (z.re == 0 && z.im == 0) return {Real(0), Real(0)};
    return exp(p * log(z));
}

MpC from_complex(Complex z) { return {Real(z.real()), Real(z.imag())}; }

Complex to_complex(const MpC& z) { return {z.re.convert_to<double>(), z.im.convert_to<double>()}; }

namespace detail {

std::mutex& precision_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

}  // namespace frdiff::oracle

#pragma once

// Hand-specialised spectral solutions for the Caputo and Riemann-Liouville
// cases, written out term by term from three-parameter Mittag-Leffler
// values. They share nothing with the engine beyond the special functions.

#include <cmath>

#include "frdiff/special_functions.hpp"

namespace frdiff::reference {

/// t^e sum_r (-a)^r t^{(g1-g2) r} E^{r+1}_{g1, (g1-g2) r + e + 1}(-b t^{g1}).
inline Complex series(double g1, double g2, double a, Complex b, double t, double e) {
    const Complex z = -b * std::pow(t, g1);
    const double step = g1 - g2;
    Complex sum{0.0, 0.0};
    int quiet = 0;
    for (int r = 0; r < 400 && quiet < 3; ++r) {
        const Complex term = std::pow(-a * std::pow(t, step), r) *
                             prabhakar({g1, step * r + e + 1.0, r + 1.0}, z, 1e-15);
        sum += term;
        quiet = std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) ? quiet + 1 : 0;
        if (a == 0.0) break;
    }
    return std::pow(t, e) * sum;
}

/// Caputo pair with orders in (1, 2]: data f1, g1v, f2, g2v.
inline Complex caputo_one_to_two(double g1, double g2, double a, Complex b, double t, Complex f1, Complex g1v,
                                 Complex f2, Complex g2v) {
    const double d = g1 - g2;
    return f1 * series(g1, g2, a, b, t, 0.0) + g1v * series(g1, g2, a, b, t, 1.0) +
           a * (f2 * series(g1, g2, a, b, t, d) + g2v * series(g1, g2, a, b, t, d + 1.0));
}

/// Riemann-Liouville pair with orders in (1, 2].
inline Complex riemann_liouville_one_to_two(double g1, double g2, double a, Complex b, double t, Complex f1,
                                            Complex g1v, Complex f2, Complex g2v) {
    return f1 * series(g1, g2, a, b, t, g1 - 2.0) + g1v * series(g1, g2, a, b, t, g1 - 1.0) +
           a * (f2 * series(g1, g2, a, b, t, g1 - 2.0) + g2v * series(g1, g2, a, b, t, g1 - 1.0));
}

/// Caputo pair with orders in (0, 1]: data h1, h2.
inline Complex caputo_zero_to_one(double g1, double g2, double a, Complex b, double t, Complex h1, Complex h2) {
    return h1 * series(g1, g2, a, b, t, 0.0) + a * h2 * series(g1, g2, a, b, t, g1 - g2);
}

/// Riemann-Liouville pair with orders in (0, 1].
inline Complex riemann_liouville_zero_to_one(double g1, double g2, double a, Complex b, double t, Complex h1,
                                             Complex h2) {
    return (h1 + a * h2) * series(g1, g2, a, b, t, g1 - 1.0);
}

}  // namespace frdiff::reference

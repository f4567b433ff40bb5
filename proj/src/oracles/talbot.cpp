#include <cmath>
#include <string>
#include <boost/math/constants/constants.hpp>

#include "frdiff/errors.hpp"
#include "frdiff/oracles.hpp"
#include "precision_guard.hpp"

namespace frdiff::oracle {

namespace bmp = boost::multiprecision;

Complex talbot_inverse_laplace(const LaplaceFunction& F, double t, int nodes) {
    if (!(t > 0.0)) throw ConstraintViolation("talbot: t must be > 0");
    if (nodes < 16) throw ConstraintViolation("talbot: at least 16 nodes are required");
    if (!F.evaluator) throw ConstraintViolation("talbot: empty Laplace function");
    // Roughly `nodes` digits are lost to the e^{rt} growth along the contour.
    detail::PrecisionGuard guard(static_cast<unsigned>(nodes) + 20);

    const int M = nodes;
    const Real T(t);
    const Real shift(std::max(F.abscissa, 0.0));
    const Real r = Real(2 * M) / (5 * T);
    const Real pi = boost::math::constants::pi<Real>();
    auto eval = [&](const MpC& s) { return F.evaluator(MpC{s.re + shift, s.im}); };

    MpC total = exp(MpC{r * T, Real(0)}) * eval(MpC{r, Real(0)});
    for (int k = 1; k < M; ++k) {
        for (int sign : {1, -1}) {
            const Real theta = sign * k * pi / M;
            const Real cot = bmp::cos(theta) / bmp::sin(theta);
            const MpC s{r * theta * cot, r * theta};
            const Real sigma = theta + (theta * cot - 1) * cot;
            total = total + exp(MpC{s.re * T, s.im * T}) * eval(s) * MpC{Real(1), sigma};
        }
    }
    const Real scale = r / (2 * M) * bmp::exp(shift * T);
    const Complex out = to_complex(scale * total);
    if (!is_finite(out)) {
        throw NonConvergence("talbot: contour evaluation produced a non-finite value at t = " + std::to_string(t));
    }
    return out;
}

namespace {

MpC power(const MpC& s, double p) { return p == 0.0 ? MpC{Real(1), Real(0)} : pow(s, Real(p)); }

MpC denominator(const MpC& s, double g1, double g2, double a, Complex b) {
    return power(s, g1) + Real(a) * power(s, g2) + from_complex(b);
}

}  // namespace

LaplaceFunction kernel_transform(double alpha, double beta, double rho, double a, Complex b) {
    return {[=](const MpC& s) { return power(s, rho - 1.0) / denominator(s, alpha, beta, a, b); }, 0.0};
}

LaplaceFunction one_to_two_transform(double g1, double d1, double g2, double d2, double a, Complex b, Complex f1,
                                     Complex g1v, Complex f2, Complex g2v, Complex u) {
    return {[=](const MpC& s) {
                const double e1 = d1 * (2.0 - g1);
                const double e2 = d2 * (2.0 - g2);
                MpC num = from_complex(f1) * power(s, 1.0 - e1) + from_complex(g1v) * power(s, -e1);
                const MpC second = from_complex(f2) * power(s, 1.0 - e2) + from_complex(g2v) * power(s, -e2);
                num = num + Real(a) * second + from_complex(u) / s;
                return num / denominator(s, g1, g2, a, b);
            },
            0.0};
}

LaplaceFunction zero_to_one_transform(double g1, double d1, double g2, double d2, double a, Complex b, Complex h1,
                                      Complex h2, Complex u) {
    return {[=](const MpC& s) {
                const MpC num = from_complex(h1) * power(s, -d1 * (1.0 - g1)) +
                                Real(a) * (from_complex(h2) * power(s, -d2 * (1.0 - g2))) + from_complex(u) / s;
                return num / denominator(s, g1, g2, a, b);
            },
            0.0};
}

}  // namespace frdiff::oracle

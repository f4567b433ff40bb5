#pragma once

// Independent numerical checks. Nothing here may call the relaxation kernel
// or the solution engine: the Laplace-domain transforms are built from the
// raw parameters and the series oracle is a separate multiprecision code.

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <string>
#include <vector>

#include "frdiff/special_functions.hpp"
#include "frdiff/types.hpp"

namespace frdiff::oracle {

using Real = boost::multiprecision::mpfr_float;

/// Minimal complex arithmetic over Real (principal branches throughout).
struct MpC {
    Real re;
    Real im;
};

MpC operator+(const MpC& x, const MpC& y);
MpC operator-(const MpC& x, const MpC& y);
MpC operator*(const MpC& x, const MpC& y);
MpC operator/(const MpC& x, const MpC& y);
MpC operator*(const Real& c, const MpC& x);
MpC exp(const MpC& z);
MpC log(const MpC& z);
/// z^p = exp(p log z), principal branch (cut on the negative real axis).
MpC pow(const MpC& z, const Real& p);
MpC from_complex(Complex z);
Complex to_complex(const MpC& z);

/// F(s) with singularities on or left of the abscissa.
struct LaplaceFunction {
    std::function<MpC(const MpC&)> evaluator;
    double abscissa = 0.0;
};

/// Fixed-Talbot inversion over the full contour (no conjugate folding, so
/// complex-coefficient transforms are handled), carried out with `nodes`
/// decimal digits. Throws NonConvergence on non-finite contour values and
/// ConstraintViolation for t <= 0 or nodes < 16.
Complex talbot_inverse_laplace(const LaplaceFunction& F, double t, int nodes = 64);

/// s^{rho-1} / (s^alpha + a s^beta + b).
LaplaceFunction kernel_transform(double alpha, double beta, double rho, double a, Complex b);

/// Laplace image of the (1,2]-family spectral solution for fixed k:
/// [f1 s^{1-d1(2-g1)} + g1v s^{-d1(2-g1)} + a (f2 s^{1-d2(2-g2)} + g2v s^{-d2(2-g2)}) + U(s)]
///   / (s^g1 + a s^g2 + b), where U(s) = u / s for a time-constant source u.
LaplaceFunction one_to_two_transform(double g1, double d1, double g2, double d2, double a, Complex b, Complex f1,
                                     Complex g1v, Complex f2, Complex g2v, Complex u = {0.0, 0.0});

/// (0,1]-family counterpart: [h1 s^{-d1(1-g1)} + a h2 s^{-d2(1-g2)} + u / s] / (s^g1 + a s^g2 + b).
LaplaceFunction zero_to_one_transform(double g1, double d1, double g2, double d2, double a, Complex b, Complex h1,
                                      Complex h2, Complex u = {0.0, 0.0});

/// Explicit finite-difference oracle for the single-term Caputo equation
///   D_t^gamma u = eta R_alpha u - omega u,   u(x, 0) = ic(x),
/// with Grunwald-Letnikov weights in time and fractional centred
/// differences for the symmetric Riesz operator, zero exterior values.
struct GLProblem {
    double gamma = 1.0;  // (0, 1]
    double alpha = 2.0;  // (1, 2]
    double eta = 1.0;
    double omega = 0.0;
    std::function<double(double)> ic;
    double x_min = -10.0;
    double x_max = 10.0;
    int nx = 201;  // grid points including both ends
    double t_end = 1.0;
    int nt = 1000;
};

/// Grid-size cap: nx * nx + nt * nt * nx / 2 operations.
inline constexpr double kGLWorkCap = 2e10;

struct GLField {
    std::vector<double> x;
    std::vector<double> u;  // solution at t_end
    double dx = 0.0;
    double dt = 0.0;
    /// Linear interpolation of u at position xq (zero outside the grid).
    double at(double xq) const;
};

/// Throws StabilityViolation when dt^gamma (eta (2/dx)^alpha + omega) > 2^gamma,
/// ConstraintViolation for invalid parameters or when the work cap is exceeded.
GLField gl_subdiffusion_solve(const GLProblem& problem);

/// Centred fractional-difference coefficients c_0..c_{n-1} of the Riesz
/// operator: R_alpha u_i = -dx^{-alpha} sum_j c_{|i-j|} u_j.
std::vector<double> riesz_coefficients(double alpha, int n);

/// Grunwald-Letnikov weights g_0..g_{n-1} of order gamma.
std::vector<double> gl_weights(double gamma, int n);

struct HighPrecValue {
    Complex value;
    std::string re;  // decimal strings with `digits` significant digits
    std::string im;
};

/// Direct summation of E^gamma_{alpha,beta}(z) in MPFR arithmetic, repeated at
/// two working precisions until they agree to `digits` digits.
/// Requires digits <= 60 and |z| <= 500. Throws NonConvergence otherwise.
HighPrecValue highprec_series(const PrabhakarParams& params, Complex z, int digits);

}  // namespace frdiff::oracle

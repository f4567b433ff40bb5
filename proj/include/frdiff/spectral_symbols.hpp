#pragma once

#include <span>

#include "frdiff/types.hpp"

namespace frdiff {

/// One Riesz-Feller space term eta * D^alpha_theta.
struct SpaceTerm {
    double eta = 1.0;
    double alpha = 2.0;
    double theta = 0.0;
};

/// Slack allowed on the skewness bound |theta| <= min(alpha, 2 - alpha) so
/// that boundary values typed in decimal are not rejected by rounding.
inline constexpr double kThetaSlack = 1e-12;

/// Throws ConstraintViolation unless 0 < alpha <= 2, the skewness bound
/// holds and theta = 0 when alpha = 1.
void validate_space_order(double alpha, double theta);
/// Adds eta > 0 to the checks above.
void validate_space_term(const SpaceTerm& term);

/// psi(k) = |k|^alpha exp(i sign(k) theta pi / 2), with sign(0) = 0.
/// Hermitian by construction: psi(-k) == conj(psi(k)) exactly.
Complex riesz_feller_symbol(double alpha, double theta, double k);

/// b(k) = omega + sum_j eta_j psi_j(k).
Complex spectral_coefficient(double omega, std::span<const SpaceTerm> terms, double k);

}  // namespace frdiff

#include "frdiff/spectral_symbols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frdiff/errors.hpp"

namespace frdiff {

void validate_space_order(double alpha, double theta) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw ConstraintViolation("space order alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!std::isfinite(theta)) throw ConstraintViolation("skewness theta must be finite");
    const double bound = std::min(alpha, 2.0 - alpha);
    if (std::fabs(theta) > bound + kThetaSlack) {
        throw ConstraintViolation("skewness bound |theta| <= min(alpha, 2 - alpha) = " + std::to_string(bound) +
                                  " violated by theta = " + std::to_string(theta));
    }
    if (alpha == 1.0 && theta != 0.0) {
        throw ConstraintViolation("alpha = 1 is admitted only with theta = 0");
    }
}

void validate_space_term(const SpaceTerm& term) {
    if (!(term.eta > 0.0) || !std::isfinite(term.eta)) {
        throw ConstraintViolation("diffusion coefficient eta must be positive, got " + std::to_string(term.eta));
    }
    validate_space_order(term.alpha, term.theta);
}

Complex riesz_feller_symbol(double alpha, double theta, double k) {
    validate_space_order(alpha, theta);
    if (!std::isfinite(k)) throw ConstraintViolation("wavenumber must be finite");
    if (k == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::fabs(k), alpha);
    if (theta == 0.0) return {mag, 0.0};
    // Phase computed for |k| only, then conjugated for k < 0.
    const double phase = theta * std::numbers::pi / 2.0;
    const double im = mag * std::sin(phase);
    return {mag * std::cos(phase), k > 0.0 ? im : -im};
}

Complex spectral_coefficient(double omega, std::span<const SpaceTerm> terms, double k) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw ConstraintViolation("reaction rate omega must be finite and >= 0");
    }
    if (terms.empty()) throw ConstraintViolation("at least one space term is required");
    Complex b{omega, 0.0};
    for (const auto& term : terms) {
        validate_space_term(term);
        b += term.eta * riesz_feller_symbol(term.alpha, term.theta, k);
    }
    return b;
}

}  // namespace frdiff

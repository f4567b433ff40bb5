#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "frdiff/errors.hpp"
#include "frdiff/spectral_symbols.hpp"

using namespace frdiff;

TEST_CASE("symmetric symbol is |k|^alpha") {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
        for (double k : {-3.0, -0.2, 0.7, 4.0}) {
            const Complex psi = riesz_feller_symbol(alpha, 0.0, k);
            CHECK(psi.imag() == 0.0);
            CHECK(psi.real() == doctest::Approx(std::pow(std::fabs(k), alpha)).epsilon(1e-15));
        }
    }
    CHECK(riesz_feller_symbol(1.3, 0.4, 0.0) == Complex{0.0, 0.0});
}

TEST_CASE("skewed symbol phase") {
    const double alpha = 1.5, theta = 0.3, k = -2.0;
    const Complex psi = riesz_feller_symbol(alpha, theta, k);
    CHECK(std::abs(psi) == doctest::Approx(std::pow(2.0, alpha)).epsilon(1e-15));
    CHECK(std::arg(psi) == doctest::Approx(-theta * std::numbers::pi / 2.0).epsilon(1e-14));
}

TEST_CASE("property: Hermitian symmetry is exact") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(0.05, 2.0), uk(0.0, 50.0), uf(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = ua(rng);
        if (alpha == 1.0) continue;
        const double theta = uf(rng) * std::min(alpha, 2.0 - alpha);
        const double k = uk(rng);
        CHECK(riesz_feller_symbol(alpha, theta, -k) == std::conj(riesz_feller_symbol(alpha, theta, k)));
    }
}

TEST_CASE("order and skewness constraints") {
    CHECK_NOTHROW(validate_space_order(1.9, 0.1));
    CHECK_NOTHROW(validate_space_order(0.5, -0.5));
    CHECK_THROWS_AS(validate_space_order(0.0, 0.0), ConstraintViolation);
    CHECK_THROWS_AS(validate_space_order(2.1, 0.0), ConstraintViolation);
    CHECK_THROWS_AS(validate_space_order(1.0, 0.2), ConstraintViolation);
    try {
        validate_space_order(1.9, 0.8);
        FAIL("expected a skewness bound violation");
    } catch (const ConstraintViolation& e) {
        CHECK(std::string(e.what()).find("skewness bound") != std::string::npos);
    }
    CHECK_THROWS_AS(validate_space_term({0.0, 1.5, 0.0}), ConstraintViolation);
    CHECK_THROWS_AS(validate_space_term({-1.0, 1.5, 0.0}), ConstraintViolation);
}

TEST_CASE("spectral coefficient sums the terms") {
    const std::vector<SpaceTerm> terms{{2.0, 1.5, 0.2}, {0.5, 0.8, 0.0}};
    const double k = 1.7, omega = 0.3;
    const Complex expected =
        omega + 2.0 * riesz_feller_symbol(1.5, 0.2, k) + 0.5 * riesz_feller_symbol(0.8, 0.0, k);
    CHECK(std::abs(spectral_coefficient(omega, terms, k) - expected) < 1e-15);
    CHECK(spectral_coefficient(omega, terms, 0.0) == Complex{omega, 0.0});
    CHECK_THROWS_AS(spectral_coefficient(-0.1, terms, k), ConstraintViolation);
    CHECK_THROWS_AS(spectral_coefficient(0.0, std::vector<SpaceTerm>{}, k), ConstraintViolation);
}

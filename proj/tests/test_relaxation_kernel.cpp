#include <doctest.h>

#include <cmath>
#include <vector>

#include "frdiff/errors.hpp"
#include "frdiff/oracles.hpp"
#include "frdiff/relaxation_kernel.hpp"
#include "frdiff/special_functions.hpp"
#include "frdiff/spectral_symbols.hpp"

using namespace frdiff;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("single series terms") {
    KernelParams p{1.5, 0.5, 1.0, 0.7, {0.0, 0.0}, 2.0};
    CHECK(std::abs(kernel_series_term(0, p) - std::pow(2.0, 0.5) / std::tgamma(1.5)) < 1e-15);

    p = {1.5, 0.5, 1.0, 1.0, {0.0, 0.0}, 1.0};
    CHECK(std::abs(kernel_series_term(1, p) + 1.0 / std::tgamma(2.5)) < 1e-15);

    // Minted: 0.25 * E^3_{1.8,3.6}(-1)
    p = {1.8, 0.9, 1.0, 0.5, {1.0, 0.0}, 1.0};
    CHECK(std::abs(kernel_series_term(2, p) - 0.051809288927237621306) < 1e-15);
}

TEST_CASE("pure power kernel") {
    const KernelValue v = two_term_kernel({1.5, 0.5, 1.0, 0.0, {0.0, 0.0}, 2.0});
    CHECK(v.value.real() == doctest::Approx(1.5957691216057308).epsilon(1e-15));
    CHECK(v.report.terms_used == 1);
}

TEST_CASE("frozen kernel values") {
    // Talbot inversions minted in mpmath at 120-200 digits.
    CHECK(rel(two_term_kernel({1.8, 0.9, 1.0, 0.5, {1.0, 0.0}, 1.0}).value, 0.62565467984589473869) < 1e-12);
    CHECK(rel(two_term_kernel({1.2, 0.9, 1.0, 2.0, {1.0, 1.0}, 4.0}).value,
              {0.0172605346595889854, -0.0821587663902088294}) < 1e-12);
    CHECK(rel(two_term_kernel({1.2, 0.4, 1.0, 2.0, {4.0, 0.0}, 4.0}).value, 0.00373324146115779722) < 1e-12);
    CHECK(rel(two_term_kernel({1.8, 0.4, 1.6, 2.0, {4.0, 0.0}, 4.0}).value, -0.0187146923324756207) < 1e-12);
    CHECK(rel(two_term_kernel({1.5, 0.5, 1.0, 1.0, {0.0, 0.0}, 1.0}).value, 0.607157705841393729) < 1e-12);
}

TEST_CASE("property: a = 0 collapses to one three-parameter function") {
    const double tol = 1e-12;
    for (double alpha : {1.2, 1.7}) {
        for (double rho : {1.0, alpha - 0.5}) {
            for (Complex b : {Complex{0.5, 0.0}, Complex{2.0, -1.0}}) {
                for (double t : {0.3, 2.0}) {
                    const Complex k = two_term_kernel({alpha, 0.4, rho, 0.0, b, t}, tol).value;
                    const Complex direct = std::pow(t, alpha - rho) *
                                           prabhakar({alpha, alpha - rho + 1.0, 1.0}, -b * std::pow(t, alpha), tol);
                    CHECK(std::abs(k - direct) <= 2.0 * tol * std::max(1.0, std::abs(direct)));
                }
            }
        }
    }
}

TEST_CASE("property: conjugating b conjugates the kernel") {
    for (double a : {0.5, 2.0}) {
        for (Complex b : {Complex{1.0, 1.0}, Complex{0.3, -2.0}}) {
            const KernelParams p{1.6, 0.7, 1.0, a, b, 1.5};
            KernelParams q = p;
            q.b = std::conj(b);
            CHECK(two_term_kernel(q).value == std::conj(two_term_kernel(p).value));
        }
    }
}

TEST_CASE("property: finite and continuous in t") {
    const KernelParams base{1.5, 0.5, 1.0, 0.5, {1.0, 0.0}, 1.0};
    Complex prev{};
    double max_jump = 0.0;
    for (int i = 1; i <= 400; ++i) {
        KernelParams p = base;
        p.t = 0.025 * i;
        const Complex v = two_term_kernel(p).value;
        REQUIRE(is_finite(v));
        if (i > 10) max_jump = std::max(max_jump, std::abs(v - prev));
        prev = v;
    }
    // Near t = 0 the kernel behaves like t^{alpha - rho} and has an infinite
    // slope; away from it the kernel is Lipschitz with a modest constant.
    CHECK(max_jump < 0.05);
}

TEST_CASE("property: agreement with the Laplace-domain oracle") {
    const std::vector<SpaceTerm> skewed{{1.0, 1.5, 0.4}};
    std::vector<KernelParams> cases{
        {1.2, 0.4, 0.2, 2.0, {1.0, 1.0}, 4.0},
        {1.5, 0.9, 1.0, 0.5, {0.5, 0.0}, 0.25},
        {1.8, 0.4, 1.4, 2.0, {4.0, 0.0}, 1.0},
        {1.8, 0.9, 1.0, 0.5, spectral_coefficient(0.3, skewed, -1.3), 2.0},
    };
    for (const KernelParams& p : cases) {
        const Complex series = two_term_kernel(p).value;
        const Complex talbot =
            oracle::talbot_inverse_laplace(oracle::kernel_transform(p.alpha, p.beta, p.rho, p.a, p.b), p.t);
        CHECK(rel(series, talbot) < 1e-10);
    }
}

TEST_CASE("negative coupling is admitted") {
    const KernelParams p{1.5, 0.5, 1.0, -0.8, {1.0, 0.0}, 1.0};
    const Complex series = two_term_kernel(p).value;
    const Complex talbot = oracle::talbot_inverse_laplace(oracle::kernel_transform(1.5, 0.5, 1.0, -0.8, 1.0), 1.0);
    CHECK(rel(series, talbot) < 1e-10);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(two_term_kernel({0.5, 0.5, 1.0, 0.0, {}, 1.0}), ConstraintViolation);
    CHECK_THROWS_AS(two_term_kernel({1.5, 0.0, 1.0, 0.0, {}, 1.0}), ConstraintViolation);
    CHECK_THROWS_AS(two_term_kernel({1.5, 0.5, 2.5, 0.0, {}, 1.0}), ConstraintViolation);
    CHECK_THROWS_AS(two_term_kernel({1.5, 0.5, 1.0, 0.0, {}, 0.0}), ConstraintViolation);
    CHECK_THROWS_AS(two_term_kernel({1.5, 0.5, 1.0, 0.0, {}, 1.0}, 0.0), ConstraintViolation);
    // alpha - rho = 0 sits inside the relaxed range.
    CHECK_NOTHROW(two_term_kernel({1.5, 0.5, 1.5, 0.3, {1.0, 0.0}, 1.0}));
}

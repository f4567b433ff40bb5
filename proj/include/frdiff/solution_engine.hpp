#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frdiff/quadrature.hpp"
#include "frdiff/spectral_symbols.hpp"
#include "frdiff/types.hpp"

namespace frdiff {

/// Which pair of order ranges the two time derivatives belong to.
enum class Family {
    OneToTwo,   // 1 < gamma_i <= 2, two initial conditions per term
    ZeroToOne,  // 0 < gamma_i <= 1, one initial condition per term
};

std::string to_string(Family f);

/// Hilfer time derivative of order gamma and type delta in [0, 1]
/// (delta = 0 Riemann-Liouville, delta = 1 Caputo).
struct TimeDerivative {
    double gamma = 1.0;
    double delta = 1.0;
};

/// Initial data as Fourier spectra (forward transform int f(x) e^{ikx} dx).
/// f1, g1, f2, g2 feed the (1,2] family; h1, h2 feed the (0,1] family. An
/// empty function means zero data.
struct InitialData {
    SpectralFunction f1, g1, f2, g2, h1, h2;
    std::string description = "zero";

    /// Point mass at x = 0: f1 = f2 = h1 = h2 = 1, g1 = g2 = 0.
    static InitialData delta();
    /// Unit-mass Gaussian of standard deviation width: exp(-width^2 k^2 / 2).
    static InitialData gaussian(double width);
    /// Unit-mass box on [-half_width, half_width]: sin(k w) / (k w).
    static InitialData box(double half_width);
    /// Every spectrum multiplied by c.
    InitialData scaled(double c) const;
};

/// Prescribed forcing in spectral form u(k, t); empty means no source.
struct Source {
    std::function<Complex(double k, double t)> u_hat;
    std::string description = "none";

    bool present() const { return static_cast<bool>(u_hat); }
    /// Time-independent Gaussian forcing amplitude * exp(-width^2 k^2 / 2).
    static Source gaussian(double amplitude, double width);
};

struct ProblemSpec {
    TimeDerivative time1{1.0, 1.0};
    TimeDerivative time2{0.5, 1.0};
    double a = 0.0;
    double omega = 0.0;
    std::vector<SpaceTerm> space_terms{SpaceTerm{}};
    InitialData ic = InitialData::delta();
    Source source;
    std::optional<Family> family;  // inferred from the orders when empty
};

/// Family implied by the two orders. Throws FamilyMismatch when they fall in
/// different ranges or disagree with spec.family.
Family resolve_family(const ProblemSpec& spec);

/// Full invariant check (orders, types, omega, space terms).
void validate(const ProblemSpec& spec);

enum class Tag { Caputo, RiemannLiouville, Hilfer, Riesz, RieszFeller, ReactionFree, MultiTerm };
using CorollaryTags = std::set<Tag>;

std::string to_string(Tag tag);
std::string to_string(const CorollaryTags& tags);

/// Reporting tags; never affects numerics.
CorollaryTags specialize(const ProblemSpec& spec);

/// Spectral value with the worst truncation report of its kernel calls.
struct SpectralValue {
    Complex value;
    TruncationReport report;
};

/// (1,2] family with exactly one space term.
Complex spectral_solution_t1(const ProblemSpec& spec, double k, double t, double tol = kDefaultTolerance);
/// (0,1] family, any number of space terms.
Complex spectral_solution_t2(const ProblemSpec& spec, double k, double t, double tol = kDefaultTolerance);
/// (1,2] family, m >= 1 space terms. Same assembly as t1, so m = 1 agrees
/// with t1 bit for bit.
Complex spectral_solution_t3(const ProblemSpec& spec, double k, double t, double tol = kDefaultTolerance);

/// Initial-data part of the spectral solution for either family (no source).
SpectralValue spectral_solution(const ProblemSpec& spec, double k, double t, double tol = kDefaultTolerance);

/// int_0^t u(k, t - xi) G(xi) dxi with G the kernel at rho = 1, on a graded
/// mesh refined until two successive meshes agree. Throws QuadratureFailure
/// when 256 intervals are not enough.
SpectralValue source_convolution(const ProblemSpec& spec, double k, double t, const QuadratureConfig& quad,
                                 double tol = kDefaultTolerance);

/// Spectral solution plus the source term.
SpectralValue full_spectral_solution(const ProblemSpec& spec, double k, double t, const QuadratureConfig& quad,
                                     double tol = kDefaultTolerance);

struct Grid {
    std::vector<double> x;
    std::vector<double> t;

    /// nx points from x_min to x_max inclusive.
    static Grid uniform(double x_min, double x_max, int nx, std::vector<double> t);
};

struct SolutionField {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<double> values;  // values[it * x.size() + ix]
    double imag_residual = 0.0;
    double tail_estimate = 0.0;
    double quadrature_error = 0.0;
    int max_panels = 0;
    double max_k_end = 0.0;
    TruncationReport report;

    double at(std::size_t ix, std::size_t it) const { return values[it * x.size() + ix]; }
};

/// N(x, t) = (1/2pi) int N^(k, t) e^{-ikx} dk on the grid. Spectra are
/// sampled once per time and shared by every x; threads > 1 evaluates the
/// nodes of a panel concurrently. Throws RealnessViolation when the
/// imaginary residual exceeds quad.realness_tol and QuadratureFailure when
/// the tail bound exceeds quad.tail_tol.
SolutionField solve(const ProblemSpec& spec, const Grid& grid, const QuadratureConfig& quad,
                    double tol = kDefaultTolerance, int threads = 1);

/// solve() with delta initial data and no source.
SolutionField green_function(const ProblemSpec& spec, const Grid& grid, const QuadratureConfig& quad,
                             double tol = kDefaultTolerance, int threads = 1);

}  // namespace frdiff

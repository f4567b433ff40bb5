#include <algorithm>
#include <cmath>
#include <numbers>

#include "frdiff/cli.hpp"
#include "frdiff/oracles.hpp"
#include "frdiff/relaxation_kernel.hpp"
#include "parallel.hpp"

namespace frdiff::cli {

namespace {

CheckResult make(std::string name, double measured, double tolerance, std::string detail = {}) {
    return {std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

struct KernelCase {
    KernelParams p;
    std::string label;
};

std::vector<KernelCase> kernel_battery() {
    std::vector<KernelCase> cases;
    const std::vector<Complex> bs{{0.5, 0.0}, {1.0, 1.0}, {4.0, 0.0}};
    for (double alpha : {1.2, 1.5, 1.8}) {
        for (double beta : {0.4, 0.9}) {
            // rho from the Hilfer type: delta = 1, 0.5 and 0.
            for (double rho : {1.0, alpha + 0.5 * (2.0 - alpha) - 1.0, alpha - 1.0}) {
                for (double a : {0.0, 0.5, 2.0}) {
                    for (Complex b : bs) {
                        for (double t : {0.25, 1.0, 4.0}) cases.push_back({{alpha, beta, rho, a, b, t}, "grid"});
                    }
                }
            }
        }
    }
    // Complex b = omega + eta psi(k) from a skewed space term.
    const std::vector<SpaceTerm> skewed{{1.0, 1.5, 0.4}};
    for (double k : {-2.5, -0.7, 1.3, 3.0}) {
        const Complex b = spectral_coefficient(0.3, skewed, k);
        for (double a : {0.5, 2.0}) {
            for (double t : {0.25, 1.0, 4.0}) cases.push_back({{1.8, 0.9, 1.0, a, b, t}, "skewed"});
        }
    }
    return cases;
}

std::vector<CheckResult> kernel_suite(int threads) {
    const std::vector<KernelCase> cases = kernel_battery();
    std::vector<double> err(cases.size());
    detail::parallel_for(static_cast<int>(cases.size()), threads, [&](int i) {
        const KernelParams& p = cases[static_cast<std::size_t>(i)].p;
        const Complex series = two_term_kernel(p).value;
        const Complex talbot =
            oracle::talbot_inverse_laplace(oracle::kernel_transform(p.alpha, p.beta, p.rho, p.a, p.b), p.t);
        err[static_cast<std::size_t>(i)] = std::abs(series - talbot) / std::max(1.0, std::abs(talbot));
    });
    double grid = 0.0, skew = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        double& worst = cases[i].label == "grid" ? grid : skew;
        worst = std::max(worst, err[i]);
    }
    return {make("kernel vs Talbot, parameter grid", grid, 1e-6, std::to_string(cases.size()) + " cases total"),
            make("kernel vs Talbot, skewed complex b", skew, 1e-6)};
}

ProblemSpec heat_spec() {
    ProblemSpec spec;
    spec.time1 = {1.0, 1.0};
    spec.time2 = {0.5, 1.0};
    spec.space_terms = {SpaceTerm{1.0, 2.0, 0.0}};
    return spec;
}

std::vector<CheckResult> heat_suite(int threads) {
    const Grid grid = Grid::uniform(-5.0, 5.0, 201, {1.0});
    const SolutionField field = green_function(heat_spec(), grid, QuadratureConfig{}, kDefaultTolerance, threads);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        const double x = grid.x[i];
        const double exact = std::exp(-x * x / 4.0) / std::sqrt(4.0 * std::numbers::pi);
        err = std::max(err, std::fabs(field.at(i, 0) - exact));
    }
    return {make("heat kernel max |N - Gaussian| on [-5, 5], t = 1", err, 1e-6)};
}

std::vector<CheckResult> spectral_suite(int threads) {
    std::vector<CheckResult> out;
    {
        ProblemSpec spec;
        spec.time1 = {1.0, 1.0};
        spec.time2 = {0.5, 1.0};
        spec.space_terms = {SpaceTerm{1.0, 1.2, 0.0}, SpaceTerm{1.0, 0.5, 0.0}};
        const int nk = 161;
        const std::vector<double> times{0.5, 1.0, 2.0};
        std::vector<double> err(static_cast<std::size_t>(nk) * times.size());
        detail::parallel_for(static_cast<int>(err.size()), threads, [&](int i) {
            const double k = -40.0 + 80.0 * (i % nk) / (nk - 1);
            const double t = times[static_cast<std::size_t>(i / nk)];
            const Complex v = spectral_solution_t2(spec, k, t);
            const double exact = std::exp(-t * (std::pow(std::fabs(k), 1.2) + std::pow(std::fabs(k), 0.5)));
            err[static_cast<std::size_t>(i)] = std::abs(v - exact);
        });
        out.push_back(make("two-term Riesz spectrum vs exp(-t(|k|^1.2 + |k|^0.5)), k in [-40, 40]",
                           *std::max_element(err.begin(), err.end()), 1e-10));
    }
    {
        double err = 0.0;
        for (auto [g1, g2] : {std::pair{1.8, 1.2}, std::pair{0.9, 0.4}}) {
            for (double a : {0.0, 0.5}) {
                ProblemSpec spec;
                spec.time1 = {g1, 1.0};
                spec.time2 = {g2, 1.0};
                spec.a = a;
                for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                    err = std::max(err, std::abs(spectral_solution(spec, 0.0, t).value - 1.0));
                }
            }
        }
        out.push_back(make("spectral mass at k = 0 equals 1, t in (0, 10]", err, 1e-10));
    }
    return out;
}

std::vector<CheckResult> subdiffusion_suite(int threads) {
    std::vector<CheckResult> out;
    const double width = 1.0;
    for (double alpha : {2.0, 1.7}) {
        for (double omega : {0.0, 0.5}) {
            ProblemSpec spec;
            spec.time1 = {0.9, 1.0};
            spec.time2 = {0.5, 1.0};
            spec.omega = omega;
            spec.space_terms = {SpaceTerm{1.0, alpha, 0.0}};
            spec.ic = InitialData::gaussian(width);
            const Grid grid = Grid::uniform(-2.0, 2.0, 41, {1.0});
            const SolutionField field = solve(spec, grid, QuadratureConfig{}, kDefaultTolerance, threads);

            oracle::GLProblem gl;
            gl.gamma = 0.9;
            gl.alpha = alpha;
            gl.omega = omega;
            gl.ic = [width](double x) {
                return std::exp(-x * x / (2.0 * width * width)) / (width * std::sqrt(2.0 * std::numbers::pi));
            };
            gl.x_min = -15.0;
            gl.x_max = 15.0;
            gl.nx = 601;
            gl.t_end = 1.0;
            gl.nt = 2000;
            const oracle::GLField ref = oracle::gl_subdiffusion_solve(gl);
            double err = 0.0;
            for (std::size_t i = 0; i < grid.x.size(); ++i) {
                const double r = ref.at(grid.x[i]);
                err = std::max(err, std::fabs(field.at(i, 0) - r) / std::fabs(r));
            }
            out.push_back(make("analytic vs finite differences, gamma 0.9, alpha " + format_number(alpha) +
                                   ", omega " + format_number(omega),
                               err, 1e-2));
        }
    }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kernel", "heat", "spectral", "subdiffusion"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, int threads) {
    if (suite == "kernel") return kernel_suite(threads);
    if (suite == "heat") return heat_suite(threads);
    if (suite == "spectral") return spectral_suite(threads);
    if (suite == "subdiffusion") return subdiffusion_suite(threads);
    throw ConstraintViolation("unknown verification suite '" + suite + "'");
}

}  // namespace frdiff::cli

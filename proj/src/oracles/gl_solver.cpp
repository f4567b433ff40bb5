#include <cmath>
#include <string>

#include "frdiff/errors.hpp"
#include "frdiff/oracles.hpp"

namespace frdiff::oracle {

std::vector<double> riesz_coefficients(double alpha, int n) {
    std::vector<double> c(static_cast<std::size_t>(std::max(n, 1)));
    c[0] = std::tgamma(alpha + 1.0) / std::pow(std::tgamma(alpha / 2.0 + 1.0), 2);
    for (int k = 0; k + 1 < n; ++k) {
        c[static_cast<std::size_t>(k + 1)] = c[static_cast<std::size_t>(k)] * (1.0 - (alpha + 1.0) / (alpha / 2.0 + k + 1.0));
    }
    return c;
}

std::vector<double> gl_weights(double gamma, int n) {
    std::vector<double> g(static_cast<std::size_t>(std::max(n, 1)));
    g[0] = 1.0;
    for (int j = 1; j < n; ++j) {
        g[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j - 1)] * (1.0 - (gamma + 1.0) / j);
    }
    return g;
}

double GLField::at(double xq) const {
    if (x.empty() || xq < x.front() || xq > x.back()) return 0.0;
    const double pos = (xq - x.front()) / dx;
    const auto i = static_cast<std::size_t>(std::min(std::floor(pos), static_cast<double>(x.size() - 2)));
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * u[i] + w * u[i + 1];
}

GLField gl_subdiffusion_solve(const GLProblem& pr) {
    if (!(pr.gamma > 0.0 && pr.gamma <= 1.0)) throw ConstraintViolation("GL oracle: gamma must lie in (0, 1]");
    if (!(pr.alpha > 1.0 && pr.alpha <= 2.0)) throw ConstraintViolation("GL oracle: alpha must lie in (1, 2]");
    if (!(pr.eta > 0.0) || !(pr.omega >= 0.0)) throw ConstraintViolation("GL oracle: need eta > 0 and omega >= 0");
    if (pr.nx < 3 || pr.nt < 1 || !(pr.x_max > pr.x_min) || !(pr.t_end > 0.0) || !pr.ic) {
        throw ConstraintViolation("GL oracle: invalid grid or missing initial condition");
    }
    const double nx = pr.nx, nt = pr.nt;
    if (nx * nx * nt + 0.5 * nt * nt * nx > kGLWorkCap) {
        throw ConstraintViolation("GL oracle: grid exceeds the resource cap");
    }

    GLField field;
    field.dx = (pr.x_max - pr.x_min) / (pr.nx - 1);
    field.dt = pr.t_end / pr.nt;
    const double tau_g = std::pow(field.dt, pr.gamma);
    const double lambda_max = pr.eta * std::pow(2.0 / field.dx, pr.alpha) + pr.omega;
    if (tau_g * lambda_max > std::pow(2.0, pr.gamma)) {
        throw StabilityViolation("GL oracle: dt^gamma * (eta (2/dx)^alpha + omega) = " +
                                 std::to_string(tau_g * lambda_max) + " exceeds 2^gamma; refine dt");
    }

    const auto n = static_cast<std::size_t>(pr.nx);
    for (std::size_t i = 0; i < n; ++i) field.x.push_back(pr.x_min + field.dx * static_cast<double>(i));
    const std::vector<double> c = riesz_coefficients(pr.alpha, pr.nx);
    const std::vector<double> g = gl_weights(pr.gamma, pr.nt + 1);
    const double riesz_scale = -pr.eta * std::pow(field.dx, -pr.alpha);

    std::vector<std::vector<double>> history;
    history.reserve(static_cast<std::size_t>(pr.nt) + 1);
    std::vector<double> u0(n);
    for (std::size_t i = 0; i < n; ++i) u0[i] = pr.ic(field.x[i]);
    history.push_back(u0);

    std::vector<double> next(n);
    for (int step = 1; step <= pr.nt; ++step) {
        const std::vector<double>& prev = history.back();
        for (std::size_t i = 0; i < n; ++i) {
            double conv = 0.0;
            for (std::size_t j = 0; j < n; ++j) conv += c[i > j ? i - j : j - i] * prev[j];
            next[i] = u0[i] + tau_g * (riesz_scale * conv - pr.omega * prev[i]);
        }
        // Memory term: - sum_{j=1}^{step} g_j (u^{step-j} - u^0)
        for (int j = 1; j <= step; ++j) {
            const double w = g[static_cast<std::size_t>(j)];
            const std::vector<double>& past = history[static_cast<std::size_t>(step - j)];
            for (std::size_t i = 0; i < n; ++i) next[i] -= w * (past[i] - u0[i]);
        }
        history.push_back(next);
    }
    field.u = history.back();
    return field;
}

}  // namespace frdiff::oracle

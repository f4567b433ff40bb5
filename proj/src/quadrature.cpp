#include "frdiff/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "frdiff/errors.hpp"

namespace frdiff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Sampling stops once a panel envelope is this far below the largest one.
constexpr double kNegligible = 1e-18;
// Minimum number of panels sampled before early stopping is considered.
constexpr int kMinPanels = 4;

// Legendre polynomials P_{n-1}, P_{n-2} at the rule's own nodes, used to
// estimate the resolution of each panel from its top coefficients.
struct ResolutionProbe {
    std::vector<double> p_top;
    std::vector<double> p_next;
};

const ResolutionProbe& resolution_probe(int n) {
    thread_local std::map<int, ResolutionProbe> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const GaussRule& rule = gauss_legendre(n);
    ResolutionProbe probe;
    for (double x : rule.nodes) {
        double p0 = 1.0, p1 = x;
        std::vector<double> values{p0, p1};
        for (int m = 2; m < n; ++m) {
            const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
            p0 = p1;
            p1 = p2;
            values.push_back(p2);
        }
        probe.p_top.push_back(n >= 2 ? values[static_cast<std::size_t>(n - 1)] : 0.0);
        probe.p_next.push_back(n >= 3 ? values[static_cast<std::size_t>(n - 2)] : 0.0);
    }
    return cache.emplace(n, std::move(probe)).first->second;
}

// Integral over one panel of g sampled at the rule nodes, plus an error
// estimate from the two highest Legendre coefficients and a rounding floor.
struct PanelSum {
    double value = 0.0;
    double error = 0.0;
};

PanelSum integrate_panel(std::span<const double> g, double half_width) {
    const auto n = static_cast<int>(g.size());
    const GaussRule& rule = gauss_legendre(n);
    const ResolutionProbe& probe = resolution_probe(n);
    double sum = 0.0, top = 0.0, next = 0.0, gmax = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto i = static_cast<std::size_t>(j);
        sum += rule.weights[i] * g[i];
        top += rule.weights[i] * g[i] * probe.p_top[i];
        next += rule.weights[i] * g[i] * probe.p_next[i];
        gmax = std::max(gmax, std::fabs(g[i]));
    }
    top *= (2.0 * (n - 1) + 1.0) / 2.0;
    next *= (2.0 * (n - 2) + 1.0) / 2.0;
    PanelSum out;
    out.value = half_width * sum;
    out.error = half_width * (2.0 * (std::fabs(top) + std::fabs(next)) + 4.0 * n * kEps * gmax);
    return out;
}

double power_law_tail(double k1, double e1, double k2, double e2, double k_max) {
    if (e2 == 0.0) return 0.0;
    if (!(e1 > e2) || k1 <= 0.0) return std::numeric_limits<double>::infinity();
    const double p = std::log(e1 / e2) / std::log(k2 / k1);
    if (!(p > 1.0)) return std::numeric_limits<double>::infinity();
    const double c = e2 * std::pow(k2, p);
    // Factor 2 of safety on (1/pi) int_K^inf C k^{-p} dk.
    return 2.0 * c * std::pow(k_max, 1.0 - p) / ((p - 1.0) * kPi);
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
    if (!(cfg.k_max > 0.0) || !std::isfinite(cfg.k_max)) throw ConstraintViolation("quadrature: k_max must be > 0");
    if (cfg.panels < 1) throw ConstraintViolation("quadrature: panels must be >= 1");
    if (cfg.nodes_per_panel < 2 || cfg.nodes_per_panel > 64) {
        throw ConstraintViolation("quadrature: nodes_per_panel must lie in [2, 64]");
    }
    if (!(cfg.tail_tol > 0.0)) throw ConstraintViolation("quadrature: tail_tol must be > 0");
    if (!(cfg.grading_exponent >= 1.0)) throw ConstraintViolation("quadrature: grading_exponent must be >= 1");
    if (!(cfg.realness_tol > 0.0)) throw ConstraintViolation("quadrature: realness_tol must be > 0");
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw ConstraintViolation("Gauss-Legendre rule needs n >= 1");
    thread_local std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n from the Chebyshev-like initial guesses.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        if (n == 1) {
            x = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

FourierGrid::FourierGrid(const QuadratureConfig& cfg, double max_abs_x)
    : k_max_(cfg.k_max), npp_(cfg.nodes_per_panel) {
    validate(cfg);
    const double xmax = std::fabs(max_abs_x);
    const double needed = xmax > 0.0 ? std::ceil(cfg.k_max * 4.0 * xmax / kPi) : 0.0;
    if (needed > 1e6) throw QuadratureFailure("quadrature: |x| too large for the panel cap");
    uniform_panels_ = std::max(cfg.panels, static_cast<int>(needed));
    width_ = k_max_ / uniform_panels_;
}

double FourierGrid::panel_lo(int p) const {
    if (p == 0) return 0.0;
    if (p <= kOriginLevels) return std::ldexp(width_, p - kOriginLevels - 1);
    return width_ * (p - kOriginLevels);
}

double FourierGrid::panel_hi(int p) const {
    if (p < kOriginLevels) return std::ldexp(width_, p - kOriginLevels);
    return width_ * (p - kOriginLevels + 1);
}

double FourierGrid::node(int p, int j) const {
    const GaussRule& rule = gauss_legendre(npp_);
    const double lo = panel_lo(p), hi = panel_hi(p);
    return lo + 0.5 * (hi - lo) * (1.0 + rule.nodes[static_cast<std::size_t>(j)]);
}

SampledSpectrum::SampledSpectrum(const FourierGrid& grid, const QuadratureConfig& cfg, const BatchFunction& eval)
    : grid_(grid) {
    sample(eval, cfg);
    estimate_tail(cfg);
}

SampledSpectrum::SampledSpectrum(const FourierGrid& grid, const QuadratureConfig& cfg, const SpectralFunction& f)
    : SampledSpectrum(grid, cfg, BatchFunction([&f](std::span<const double> k, std::span<Complex> out) {
                          for (std::size_t i = 0; i < k.size(); ++i) out[i] = f(k[i]);
                      })) {}

Complex SampledSpectrum::value(int p, int j) const {
    return values_[static_cast<std::size_t>(p * grid_.nodes_per_panel() + j)];
}

void SampledSpectrum::sample(const BatchFunction& eval, const QuadratureConfig&) {
    const int npp = grid_.nodes_per_panel();
    const int check = grid_.check_node();
    std::vector<double> ks(static_cast<std::size_t>(npp + 1));
    std::vector<Complex> out(static_cast<std::size_t>(npp + 1));
    double peak = 0.0;
    for (int p = 0; p < grid_.panels(); ++p) {
        for (int j = 0; j < npp; ++j) ks[static_cast<std::size_t>(j)] = grid_.node(p, j);
        ks[static_cast<std::size_t>(npp)] = -grid_.node(p, check);
        eval(ks, out);
        double env = 0.0;
        for (int j = 0; j < npp; ++j) {
            const Complex v = out[static_cast<std::size_t>(j)];
            if (!is_finite(v)) {
                throw QuadratureFailure("quadrature: non-finite spectrum value at k = " +
                                        std::to_string(ks[static_cast<std::size_t>(j)]));
            }
            values_.push_back(v);
            env = std::max(env, std::abs(v));
        }
        const Complex m = out[static_cast<std::size_t>(npp)];
        mirror_.push_back(m);
        hermitian_dev_ = std::max(hermitian_dev_, std::abs(m - std::conj(value(p, check))));
        envelope_.push_back(env);
        panels_sampled_ = p + 1;
        peak = std::max(peak, env);
        if (p + 1 >= FourierGrid::kOriginLevels + kMinPanels && env <= kNegligible * peak && env <= envelope_[static_cast<std::size_t>(p - 1)]) {
            break;
        }
    }
}

void SampledSpectrum::estimate_tail(const QuadratureConfig& cfg) {
    const double h = grid_.panel_width();
    const int n = panels_sampled_;
    if (truncated_early()) {
        // Geometric continuation of the decaying envelopes, both signs of k.
        const double e_last = envelope_[static_cast<std::size_t>(n - 1)];
        const double e_prev = envelope_[static_cast<std::size_t>(n - 2)];
        const double q = e_prev > 0.0 ? std::min(e_last / e_prev, 0.5) : 0.0;
        tail_ = h * e_last * q / (1.0 - q) / kPi;
        return;
    }
    const int origin = FourierGrid::kOriginLevels;
    const int p1 = origin + std::max(0, (n - origin) / 2 - 1);
    const int p2 = n - 1;
    if (p1 == p2) {
        tail_ = std::numeric_limits<double>::infinity();
        return;
    }
    tail_ = power_law_tail(grid_.uniform_start(p1), envelope_[static_cast<std::size_t>(p1)], grid_.uniform_start(p2),
                           envelope_[static_cast<std::size_t>(p2)], cfg.k_max);
}

FourierResult SampledSpectrum::invert(double x) const {
    const int npp = grid_.nodes_per_panel();
    FourierResult res;
    std::vector<double> g(static_cast<std::size_t>(npp));
    double total = 0.0, err = 0.0;
    for (int p = 0; p < panels_sampled_; ++p) {
        for (int j = 0; j < npp; ++j) {
            const double k = grid_.node(p, j);
            const Complex f = value(p, j);
            // Re(F e^{-ikx}) = Re F cos(kx) + Im F sin(kx)
            g[static_cast<std::size_t>(j)] = f.real() * std::cos(k * x) + f.imag() * std::sin(k * x);
        }
        const PanelSum s = integrate_panel(g, 0.5 * (grid_.panel_hi(p) - grid_.panel_lo(p)));
        total += s.value;
        err += s.error;
    }
    res.k_end = grid_.panel_hi(panels_sampled_ - 1);
    res.value = total / kPi;
    res.error_estimate = err / kPi;
    res.tail_estimate = tail_;
    res.imag_residual = res.k_end * hermitian_dev_ / (2.0 * kPi);
    res.panels_used = panels_sampled_;
    return res;
}

FourierResult invert_fourier(const SpectralFunction& f, double x, const QuadratureConfig& cfg) {
    const FourierGrid grid(cfg, x);
    const SampledSpectrum spectrum(grid, cfg, f);
    const FourierResult res = spectrum.invert(x);
    if (res.imag_residual > cfg.realness_tol) {
        throw RealnessViolation("quadrature: spectrum is not Hermitian (imaginary residual bound " +
                                std::to_string(res.imag_residual) + ")");
    }
    if (!(res.tail_estimate <= cfg.tail_tol)) {
        throw QuadratureFailure("quadrature: tail bound " + std::to_string(res.tail_estimate) +
                                " exceeds tail_tol; raise k_max");
    }
    return res;
}

FourierResult invert_fourier_two_sided(const SpectralFunction& f, double x, const QuadratureConfig& cfg) {
    const FourierGrid grid(cfg, x);
    const int npp = grid.nodes_per_panel();
    const GaussRule& rule = gauss_legendre(npp);
    Complex total{0.0, 0.0};
    std::vector<double> envelope;
    for (int side = -1; side <= 1; side += 2) {
        for (int p = 0; p < grid.panels(); ++p) {
            Complex panel{0.0, 0.0};
            double env = 0.0;
            for (int j = 0; j < npp; ++j) {
                const double k = side * grid.node(p, j);
                const Complex v = f(k);
                env = std::max(env, std::abs(v));
                panel += rule.weights[static_cast<std::size_t>(j)] * v * std::polar(1.0, -k * x);
            }
            total += 0.5 * (grid.panel_hi(p) - grid.panel_lo(p)) * panel;
            if (side == 1) envelope.push_back(env);
        }
    }
    FourierResult res;
    res.value = total.real() / (2.0 * kPi);
    res.imag_residual = std::fabs(total.imag()) / (2.0 * kPi);
    res.k_end = grid.k_max();
    res.panels_used = 2 * grid.panels();
    const int n = grid.panels();
    const int origin = FourierGrid::kOriginLevels;
    const int p1 = origin + std::max(0, (n - origin) / 2 - 1);
    res.tail_estimate = p1 == n - 1 ? std::numeric_limits<double>::infinity()
                                    : power_law_tail(grid.uniform_start(p1), envelope[static_cast<std::size_t>(p1)],
                                                     grid.uniform_start(n - 1),
                                                     envelope[static_cast<std::size_t>(n - 1)], cfg.k_max);
    return res;
}

GradedMesh graded_mesh(double t, double exponent, int n, int nodes_per_interval) {
    if (!(t > 0.0)) throw ConstraintViolation("graded mesh: t must be > 0");
    if (n < 2) throw ConstraintViolation("graded mesh: n must be >= 2");
    if (!(exponent >= 1.0)) throw ConstraintViolation("graded mesh: exponent must be >= 1");
    const GaussRule& rule = gauss_legendre(nodes_per_interval);
    GradedMesh mesh;
    mesh.breakpoints.reserve(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
        mesh.breakpoints.push_back(j == n ? t : t * std::pow(static_cast<double>(j) / n, exponent));
    }
    for (int j = 0; j < n; ++j) {
        const double a = mesh.breakpoints[static_cast<std::size_t>(j)];
        const double b = mesh.breakpoints[static_cast<std::size_t>(j + 1)];
        const double half = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            mesh.nodes.push_back(a + half * (1.0 + rule.nodes[i]));
            mesh.weights.push_back(half * rule.weights[i]);
        }
    }
    return mesh;
}

double required_grading_exponent(double gamma, int n, double tol) {
    if (!(gamma > 0.0) || n < 2 || !(tol > 0.0 && tol < 1.0)) {
        throw ConstraintViolation("required_grading_exponent: need gamma > 0, n >= 2, 0 < tol < 1");
    }
    // The bare first-interval condition is not enough: strong grading also
    // stretches the next few intervals (ratio ((j+1)/j)^exponent), and those
    // only become negligible with extra grading, hence the factor 1.5.
    return std::max(1.0, 1.5 * std::log(1.0 / tol) / (gamma * std::log(static_cast<double>(n))));
}

}  // namespace frdiff

#include "frdiff/solution_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frdiff/errors.hpp"
#include "frdiff/relaxation_kernel.hpp"
#include "parallel.hpp"

namespace frdiff {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kFirstMesh = 8;
constexpr int kMaxMesh = 256;
// Relative accuracy floor for the source time integral.
constexpr double kSourceTolFloor = 1e-10;

bool in_one_to_two(double g) { return g > 1.0 && g <= 2.0; }
bool in_zero_to_one(double g) { return g > 0.0 && g <= 1.0; }

// One initial-condition contribution: coefficient * data(k) * K_rho(t).
struct DataTerm {
    const SpectralFunction* data;
    double rho;
    double coefficient;
};

SpectralValue assemble(const ProblemSpec& spec, Family family, Complex b, double k, double t, double tol) {
    const double g1 = spec.time1.gamma, d1 = spec.time1.delta;
    const double g2 = spec.time2.gamma, d2 = spec.time2.delta;
    std::vector<DataTerm> terms;
    if (family == Family::OneToTwo) {
        terms = {{&spec.ic.f1, 2.0 - d1 * (2.0 - g1), 1.0},
                 {&spec.ic.g1, 1.0 - d1 * (2.0 - g1), 1.0},
                 {&spec.ic.f2, 2.0 - d2 * (2.0 - g2), spec.a},
                 {&spec.ic.g2, 1.0 - d2 * (2.0 - g2), spec.a}};
    } else {
        terms = {{&spec.ic.h1, 1.0 - d1 * (1.0 - g1), 1.0}, {&spec.ic.h2, 1.0 - d2 * (1.0 - g2), spec.a}};
    }
    SpectralValue out{{0.0, 0.0}, {}};
    for (const DataTerm& term : terms) {
        if (term.coefficient == 0.0 || !*term.data) continue;
        const Complex data = (*term.data)(k);
        if (data == Complex{0.0, 0.0}) continue;
        const KernelValue kv = two_term_kernel({g1, g2, term.rho, spec.a, b, t}, tol);
        out.value += term.coefficient * data * kv.value;
        out.report.merge(kv.report);
    }
    return out;
}

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConstraintViolation("time must be finite and > 0");
}

}  // namespace

std::string to_string(Family f) { return f == Family::OneToTwo ? "one_to_two" : "zero_to_one"; }

InitialData InitialData::delta() {
    InitialData ic;
    const SpectralFunction one = [](double) { return Complex{1.0, 0.0}; };
    ic.f1 = ic.f2 = ic.h1 = ic.h2 = one;
    ic.description = "delta";
    return ic;
}

InitialData InitialData::gaussian(double width) {
    if (!(width > 0.0)) throw ConstraintViolation("gaussian initial data needs width > 0");
    InitialData ic;
    const SpectralFunction g = [width](double k) { return Complex{std::exp(-0.5 * width * width * k * k), 0.0}; };
    ic.f1 = ic.f2 = ic.h1 = ic.h2 = g;
    ic.description = "gaussian(" + std::to_string(width) + ")";
    return ic;
}

InitialData InitialData::box(double half_width) {
    if (!(half_width > 0.0)) throw ConstraintViolation("box initial data needs half_width > 0");
    InitialData ic;
    const SpectralFunction s = [half_width](double k) {
        const double u = k * half_width;
        return Complex{u == 0.0 ? 1.0 : std::sin(u) / u, 0.0};
    };
    ic.f1 = ic.f2 = ic.h1 = ic.h2 = s;
    ic.description = "box(" + std::to_string(half_width) + ")";
    return ic;
}

InitialData InitialData::scaled(double c) const {
    InitialData out;
    auto scale = [c](const SpectralFunction& f) -> SpectralFunction {
        if (!f) return {};
        return [f, c](double k) { return c * f(k); };
    };
    out.f1 = scale(f1);
    out.g1 = scale(g1);
    out.f2 = scale(f2);
    out.g2 = scale(g2);
    out.h1 = scale(h1);
    out.h2 = scale(h2);
    out.description = std::to_string(c) + " * " + description;
    return out;
}

Source Source::gaussian(double amplitude, double width) {
    if (!(width > 0.0)) throw ConstraintViolation("gaussian source needs width > 0");
    Source s;
    s.u_hat = [amplitude, width](double k, double) {
        return Complex{amplitude * std::exp(-0.5 * width * width * k * k), 0.0};
    };
    s.description = "gaussian(" + std::to_string(amplitude) + ", " + std::to_string(width) + ")";
    return s;
}

Family resolve_family(const ProblemSpec& spec) {
    const double g1 = spec.time1.gamma, g2 = spec.time2.gamma;
    Family inferred;
    if (in_one_to_two(g1) && in_one_to_two(g2)) {
        inferred = Family::OneToTwo;
    } else if (in_zero_to_one(g1) && in_zero_to_one(g2)) {
        inferred = Family::ZeroToOne;
    } else {
        throw FamilyMismatch("orders gamma1 = " + std::to_string(g1) + " and gamma2 = " + std::to_string(g2) +
                             " must both lie in (1, 2] or both in (0, 1]");
    }
    if (spec.family && *spec.family != inferred) {
        throw FamilyMismatch("orders belong to family " + to_string(inferred) + " but family " +
                             to_string(*spec.family) + " was requested");
    }
    return inferred;
}

void validate(const ProblemSpec& spec) {
    for (const TimeDerivative* d : {&spec.time1, &spec.time2}) {
        if (!std::isfinite(d->gamma) || !(d->delta >= 0.0 && d->delta <= 1.0)) {
            throw ConstraintViolation("time derivative type delta must lie in [0, 1]");
        }
    }
    if (!(spec.time1.gamma > spec.time2.gamma)) throw ConstraintViolation("gamma1 > gamma2 required");
    resolve_family(spec);
    if (!std::isfinite(spec.a)) throw ConstraintViolation("coupling a must be finite");
    if (!(spec.omega >= 0.0) || !std::isfinite(spec.omega)) throw ConstraintViolation("omega >= 0 required");
    if (spec.space_terms.empty()) throw ConstraintViolation("at least one space term is required");
    for (const auto& term : spec.space_terms) validate_space_term(term);
}

std::string to_string(Tag tag) {
    switch (tag) {
        case Tag::Caputo: return "caputo";
        case Tag::RiemannLiouville: return "riemann_liouville";
        case Tag::Hilfer: return "hilfer";
        case Tag::Riesz: return "riesz";
        case Tag::RieszFeller: return "riesz_feller";
        case Tag::ReactionFree: return "reaction_free";
        case Tag::MultiTerm: return "multi_term";
    }
    return "unknown";
}

std::string to_string(const CorollaryTags& tags) {
    std::string out;
    for (Tag t : tags) {
        if (!out.empty()) out += ",";
        out += to_string(t);
    }
    return out;
}

CorollaryTags specialize(const ProblemSpec& spec) {
    CorollaryTags tags;
    const double d1 = spec.time1.delta, d2 = spec.time2.delta;
    if (d1 == 1.0 && d2 == 1.0) tags.insert(Tag::Caputo);
    else if (d1 == 0.0 && d2 == 0.0) tags.insert(Tag::RiemannLiouville);
    else tags.insert(Tag::Hilfer);
    const bool symmetric = std::all_of(spec.space_terms.begin(), spec.space_terms.end(),
                                       [](const SpaceTerm& s) { return s.theta == 0.0; });
    tags.insert(symmetric ? Tag::Riesz : Tag::RieszFeller);
    if (spec.omega == 0.0) tags.insert(Tag::ReactionFree);
    if (spec.space_terms.size() >= 2) tags.insert(Tag::MultiTerm);
    return tags;
}

SpectralValue spectral_solution(const ProblemSpec& spec, double k, double t, double tol) {
    validate(spec);
    require_time(t);
    const Family family = resolve_family(spec);
    return assemble(spec, family, spectral_coefficient(spec.omega, spec.space_terms, k), k, t, tol);
}

Complex spectral_solution_t1(const ProblemSpec& spec, double k, double t, double tol) {
    validate(spec);
    if (resolve_family(spec) != Family::OneToTwo) {
        throw FamilyMismatch("spectral_solution_t1 needs orders in (1, 2]");
    }
    if (spec.space_terms.size() != 1) throw ConstraintViolation("spectral_solution_t1 needs exactly one space term");
    return spectral_solution(spec, k, t, tol).value;
}

Complex spectral_solution_t2(const ProblemSpec& spec, double k, double t, double tol) {
    validate(spec);
    if (resolve_family(spec) != Family::ZeroToOne) {
        throw FamilyMismatch("spectral_solution_t2 needs orders in (0, 1]");
    }
    return spectral_solution(spec, k, t, tol).value;
}

Complex spectral_solution_t3(const ProblemSpec& spec, double k, double t, double tol) {
    validate(spec);
    if (resolve_family(spec) != Family::OneToTwo) {
        throw FamilyMismatch("spectral_solution_t3 needs orders in (1, 2]");
    }
    return spectral_solution(spec, k, t, tol).value;
}

SpectralValue source_convolution(const ProblemSpec& spec, double k, double t, const QuadratureConfig& quad,
                                 double tol) {
    validate(spec);
    validate(quad);
    require_time(t);
    if (!spec.source.present()) return {{0.0, 0.0}, {}};
    const Complex b = spectral_coefficient(spec.omega, spec.space_terms, k);
    const double g1 = spec.time1.gamma;
    const double target = std::max(tol, kSourceTolFloor);
    std::optional<Complex> previous;
    TruncationReport report;
    for (int n = kFirstMesh; n <= kMaxMesh; n *= 2) {
        const double exponent = std::max(quad.grading_exponent, required_grading_exponent(g1, n, target));
        const GradedMesh mesh = graded_mesh(t, exponent, n);
        Complex sum{0.0, 0.0};
        double magnitude = 0.0;
        for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
            const double xi = mesh.nodes[i];
            const Complex u = spec.source.u_hat(k, t - xi);
            if (u == Complex{0.0, 0.0}) continue;
            const KernelValue g = two_term_kernel({g1, spec.time2.gamma, 1.0, spec.a, b, xi}, tol);
            report.merge(g.report);
            const Complex term = mesh.weights[i] * u * g.value;
            sum += term;
            magnitude += std::abs(term);
        }
        if (previous) {
            const double change = std::abs(sum - *previous);
            if (change <= target * std::abs(sum) + 64.0 * kEps * magnitude) return {sum, report};
        }
        previous = sum;
    }
    throw QuadratureFailure("source convolution: graded mesh did not converge with " + std::to_string(kMaxMesh) +
                            " intervals at k = " + std::to_string(k) + ", t = " + std::to_string(t));
}

SpectralValue full_spectral_solution(const ProblemSpec& spec, double k, double t, const QuadratureConfig& quad,
                                     double tol) {
    SpectralValue out = spectral_solution(spec, k, t, tol);
    if (spec.source.present()) {
        const SpectralValue src = source_convolution(spec, k, t, quad, tol);
        out.value += src.value;
        out.report.merge(src.report);
    }
    return out;
}

Grid Grid::uniform(double x_min, double x_max, int nx, std::vector<double> t) {
    if (nx < 1) throw ConstraintViolation("grid needs nx >= 1");
    if (nx > 1 && !(x_max > x_min)) throw ConstraintViolation("grid needs x_max > x_min");
    Grid g;
    g.t = std::move(t);
    for (int i = 0; i < nx; ++i) {
        g.x.push_back(nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1));
    }
    return g;
}

SolutionField solve(const ProblemSpec& spec, const Grid& grid, const QuadratureConfig& quad, double tol,
                    int threads) {
    validate(spec);
    validate(quad);
    if (grid.x.empty() || grid.t.empty()) throw ConstraintViolation("grid must contain at least one x and one t");
    for (double t : grid.t) require_time(t);
    double xmax = 0.0;
    for (double x : grid.x) {
        if (!std::isfinite(x)) throw ConstraintViolation("grid positions must be finite");
        xmax = std::max(xmax, std::fabs(x));
    }

    SolutionField field;
    field.x = grid.x;
    field.t = grid.t;
    field.values.resize(grid.x.size() * grid.t.size());
    const FourierGrid fgrid(quad, xmax);

    for (std::size_t it = 0; it < grid.t.size(); ++it) {
        const double t = grid.t[it];
        TruncationReport t_report;
        const SampledSpectrum::BatchFunction batch = [&](std::span<const double> k, std::span<Complex> out) {
            std::vector<TruncationReport> reports(k.size());
            detail::parallel_for(static_cast<int>(k.size()), threads, [&](int i) {
                const auto idx = static_cast<std::size_t>(i);
                const SpectralValue v = full_spectral_solution(spec, k[idx], t, quad, tol);
                out[idx] = v.value;
                reports[idx] = v.report;
            });
            for (const auto& r : reports) t_report.merge(r);
        };
        const SampledSpectrum spectrum(fgrid, quad, batch);
        field.report.merge(t_report);
        field.tail_estimate = std::max(field.tail_estimate, spectrum.tail_estimate());
        for (std::size_t ix = 0; ix < grid.x.size(); ++ix) {
            const FourierResult r = spectrum.invert(grid.x[ix]);
            field.values[it * grid.x.size() + ix] = r.value;
            field.imag_residual = std::max(field.imag_residual, r.imag_residual);
            field.quadrature_error = std::max(field.quadrature_error, r.error_estimate);
            field.max_panels = std::max(field.max_panels, r.panels_used);
            field.max_k_end = std::max(field.max_k_end, r.k_end);
        }
    }
    if (field.imag_residual > quad.realness_tol) {
        throw RealnessViolation("solve: imaginary residual " + std::to_string(field.imag_residual) +
                                " exceeds realness_tol");
    }
    if (!(field.tail_estimate <= quad.tail_tol)) {
        throw QuadratureFailure("solve: Fourier tail bound " + std::to_string(field.tail_estimate) +
                                " exceeds tail_tol; raise k_max or use smoother initial data");
    }
    return field;
}

SolutionField green_function(const ProblemSpec& spec, const Grid& grid, const QuadratureConfig& quad, double tol,
                             int threads) {
    ProblemSpec g = spec;
    g.ic = InitialData::delta();
    g.source = Source{};
    return solve(g, grid, quad, tol, threads);
}

}  // namespace frdiff

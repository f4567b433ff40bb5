#include <algorithm>
#include <cmath>
#include <sstream>

#include "frdiff/cli.hpp"
#include "parallel.hpp"

namespace frdiff::cli {

namespace {

std::string report_line(const TruncationReport& r) {
    return "terms_used=" + std::to_string(r.terms_used) + " tail_estimate=" + format_number(r.tail_estimate) +
           " degraded=" + (r.degraded ? "true" : "false") + " precision_bits=" + std::to_string(r.precision_bits);
}

void metadata(std::ostringstream& o, const RunConfig& cfg, const std::string& command) {
    const ProblemSpec spec = to_problem_spec(cfg);
    o << "# frdiff " << command << "\n";
    o << "# family = " << to_string(resolve_family(spec)) << "\n";
    o << "# tags = " << to_string(specialize(spec)) << "\n";
    std::istringstream lines(serialize_config(cfg));
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) o << "# " << line << "\n";
    }
}

// Closed form exp(-t sum eta |k|^alpha) holds for a single first-order
// Caputo derivative, no reaction, symmetric space terms and a point mass.
bool has_closed_form(const RunConfig& cfg) {
    const ProblemSection& p = cfg.problem;
    if (!(p.gamma1 == 1.0 && p.delta1 == 1.0 && p.a == 0.0 && p.omega == 0.0)) return false;
    if (p.ic != "delta" || p.source != "none") return false;
    return std::all_of(p.space_terms.begin(), p.space_terms.end(),
                       [](const SpaceTerm& s) { return s.theta == 0.0; });
}

}  // namespace

std::string field_csv(const SolutionField& field, const RunConfig& cfg, const std::string& command) {
    std::ostringstream o;
    metadata(o, cfg, command);
    o << "# truncation: " << report_line(field.report) << "\n";
    o << "# quadrature: imag_residual=" << format_number(field.imag_residual)
      << " tail_estimate=" << format_number(field.tail_estimate)
      << " error_estimate=" << format_number(field.quadrature_error) << " max_panels=" << field.max_panels
      << " max_k_end=" << format_number(field.max_k_end) << "\n";
    o << "x,t,N\n";
    for (std::size_t it = 0; it < field.t.size(); ++it) {
        for (std::size_t ix = 0; ix < field.x.size(); ++ix) {
            o << format_number(field.x[ix]) << "," << format_number(field.t[it]) << ","
              << format_number(field.at(ix, it)) << "\n";
        }
    }
    return o.str();
}

std::string field_svg(const SolutionField& field) {
    constexpr double W = 640, H = 400, M = 40;
    double lo = 0.0, hi = 0.0;
    for (double v : field.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    const double x0 = field.x.front();
    const double span = field.x.size() > 1 ? field.x.back() - x0 : 1.0;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    o << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (std::size_t it = 0; it < field.t.size(); ++it) {
        o << "<polyline fill=\"none\" stroke=\"" << colors[it % 6] << "\" points=\"";
        for (std::size_t ix = 0; ix < field.x.size(); ++ix) {
            const double px = M + (W - 2 * M) * (field.x[ix] - x0) / span;
            const double py = H - M - (H - 2 * M) * (field.at(ix, it) - lo) / (hi - lo);
            o << format_number(px) << "," << format_number(py) << " ";
        }
        o << "\"/>\n";
        o << "<text x=\"" << W - M - 90 << "\" y=\"" << M + 16 * (it + 1) << "\" fill=\"" << colors[it % 6]
          << "\" font-size=\"12\">t = " << format_number(field.t[it]) << "</text>\n";
    }
    o << "<text x=\"" << M << "\" y=\"" << M - 8 << "\" font-size=\"12\">N(x, t), range [" << format_number(lo)
      << ", " << format_number(hi) << "]</text>\n";
    o << "</svg>\n";
    return o.str();
}

std::string spectrum_csv(const RunConfig& cfg, int threads) {
    const ProblemSpec spec = to_problem_spec(cfg);
    const bool check = has_closed_form(cfg);
    const int nk = cfg.output.spectrum_nk;
    std::ostringstream o;
    metadata(o, cfg, "spectrum");
    o << (check ? "k,t,re,im,check\n" : "k,t,re,im\n");
    for (double t : cfg.grid.t) {
        std::vector<Complex> values(static_cast<std::size_t>(nk));
        std::vector<double> ks(static_cast<std::size_t>(nk));
        for (int j = 0; j < nk; ++j) ks[static_cast<std::size_t>(j)] = cfg.output.spectrum_k_max * j / (nk - 1);
        detail::parallel_for(nk, threads, [&](int j) {
            const auto idx = static_cast<std::size_t>(j);
            values[idx] = full_spectral_solution(spec, ks[idx], t, cfg.quadrature, cfg.tol).value;
        });
        for (std::size_t j = 0; j < ks.size(); ++j) {
            o << format_number(ks[j]) << "," << format_number(t) << "," << format_number(values[j].real()) << ","
              << format_number(values[j].imag());
            if (check) {
                double s = 0.0;
                for (const SpaceTerm& term : cfg.problem.space_terms) s += term.eta * std::pow(ks[j], term.alpha);
                o << "," << format_number(std::exp(-t * s));
            }
            o << "\n";
        }
    }
    return o.str();
}

}  // namespace frdiff::cli

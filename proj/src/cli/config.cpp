#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "frdiff/cli.hpp"

namespace frdiff::cli {

namespace {

std::string describe(int line, const std::string& key, const std::string& message) {
    std::string out = "config";
    if (line > 0) out += " line " + std::to_string(line);
    if (!key.empty()) out += ": " + key;
    return out + ": " + message;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

double parse_double(const std::string& text, int line, const std::string& key) {
    const std::string s = trim(text);
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (!s.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError(line, key, "expected a finite real number, got '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
    const std::string s = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError(line, key, "expected an integer, got '" + s + "'");
    }
    return v;
}

std::vector<SpaceTerm> parse_space_terms(const std::string& text, int line) {
    std::vector<SpaceTerm> terms;
    for (const std::string& item : split(text, ',')) {
        const auto fields = split(item, ':');
        if (fields.size() != 3) {
            throw ConfigError(line, "space_terms", "expected eta:alpha:theta triples, got '" + item + "'");
        }
        terms.push_back({parse_double(fields[0], line, "space_terms"), parse_double(fields[1], line, "space_terms"),
                         parse_double(fields[2], line, "space_terms")});
    }
    return terms;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) out.push_back(parse_double(item, line, key));
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> m;
        auto real = [&m](const std::string& name, auto member) {
            m[name] = [member, key = name.substr(name.find('.') + 1)](RunConfig& c, const std::string& v, int line) {
                member(c) = parse_double(v, line, key);
            };
        };
        auto text = [&m](const std::string& name, auto member) {
            m[name] = [member](RunConfig& c, const std::string& v, int) { member(c) = v; };
        };
        real("problem.gamma1", [](RunConfig& c) -> double& { return c.problem.gamma1; });
        real("problem.delta1", [](RunConfig& c) -> double& { return c.problem.delta1; });
        real("problem.gamma2", [](RunConfig& c) -> double& { return c.problem.gamma2; });
        real("problem.delta2", [](RunConfig& c) -> double& { return c.problem.delta2; });
        real("problem.a", [](RunConfig& c) -> double& { return c.problem.a; });
        real("problem.omega", [](RunConfig& c) -> double& { return c.problem.omega; });
        m["problem.space_terms"] = [](RunConfig& c, const std::string& v, int line) {
            c.problem.space_terms = parse_space_terms(v, line);
        };
        text("problem.ic", [](RunConfig& c) -> std::string& { return c.problem.ic; });
        real("problem.ic_width", [](RunConfig& c) -> double& { return c.problem.ic_width; });
        text("problem.source", [](RunConfig& c) -> std::string& { return c.problem.source; });
        real("problem.source_amplitude", [](RunConfig& c) -> double& { return c.problem.source_amplitude; });
        real("problem.source_width", [](RunConfig& c) -> double& { return c.problem.source_width; });
        text("problem.family", [](RunConfig& c) -> std::string& { return c.problem.family; });

        real("grid.x_min", [](RunConfig& c) -> double& { return c.grid.x_min; });
        real("grid.x_max", [](RunConfig& c) -> double& { return c.grid.x_max; });
        m["grid.nx"] = [](RunConfig& c, const std::string& v, int line) { c.grid.nx = parse_int(v, line, "nx"); };
        m["grid.t"] = [](RunConfig& c, const std::string& v, int line) { c.grid.t = parse_list(v, line, "t"); };

        real("quadrature.k_max", [](RunConfig& c) -> double& { return c.quadrature.k_max; });
        m["quadrature.panels"] = [](RunConfig& c, const std::string& v, int line) {
            c.quadrature.panels = parse_int(v, line, "panels");
        };
        m["quadrature.nodes_per_panel"] = [](RunConfig& c, const std::string& v, int line) {
            c.quadrature.nodes_per_panel = parse_int(v, line, "nodes_per_panel");
        };
        real("quadrature.tail_tol", [](RunConfig& c) -> double& { return c.quadrature.tail_tol; });
        real("quadrature.grading_exponent", [](RunConfig& c) -> double& { return c.quadrature.grading_exponent; });
        real("quadrature.realness_tol", [](RunConfig& c) -> double& { return c.quadrature.realness_tol; });
        real("quadrature.tol", [](RunConfig& c) -> double& { return c.tol; });

        text("output.path", [](RunConfig& c) -> std::string& { return c.output.path; });
        text("output.format", [](RunConfig& c) -> std::string& { return c.output.format; });
        text("output.spectrum_path", [](RunConfig& c) -> std::string& { return c.output.spectrum_path; });
        real("output.spectrum_k_max", [](RunConfig& c) -> double& { return c.output.spectrum_k_max; });
        m["output.spectrum_nk"] = [](RunConfig& c, const std::string& v, int line) {
            c.output.spectrum_nk = parse_int(v, line, "spectrum_nk");
        };
        return m;
    }();
    return table;
}

int line_of(const RunConfig& cfg, const std::string& name) {
    const auto it = cfg.lines.find(name);
    return it == cfg.lines.end() ? 0 : it->second;
}

void require(bool ok, const RunConfig& cfg, const std::string& name, const std::string& message) {
    if (!ok) throw ConfigError(line_of(cfg, name), name.substr(name.find('.') + 1), message);
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

ConfigError::ConfigError(int line, const std::string& key, const std::string& message)
    : ConstraintViolation(describe(line, key, message)), line_(line), key_(key) {}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(line, "", "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "problem" && section != "grid" && section != "quadrature" && section != "output") {
                throw ConfigError(line, "", "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section.empty()) throw ConfigError(line, key, "key outside of any section");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        } else if (value.find('"') != std::string::npos) {
            throw ConfigError(line, key, "unbalanced quotes");
        }
        const std::string name = section + "." + key;
        const auto it = setters().find(name);
        if (it == setters().end()) throw ConfigError(line, key, "unknown key in [" + section + "]");
        if (cfg.lines.count(name)) throw ConfigError(line, key, "duplicate key");
        cfg.lines[name] = line;
        it->second(cfg, value, line);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "", "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const RunConfig& cfg) {
    const ProblemSection& p = cfg.problem;
    require(p.gamma1 > p.gamma2, cfg, "problem.gamma1", "gamma1 > gamma2 required");
    require(p.gamma2 > 0.0, cfg, "problem.gamma2", "gamma2 > 0 required");
    require(p.delta1 >= 0.0 && p.delta1 <= 1.0, cfg, "problem.delta1", "delta1 must lie in [0, 1]");
    require(p.delta2 >= 0.0 && p.delta2 <= 1.0, cfg, "problem.delta2", "delta2 must lie in [0, 1]");
    require(p.omega >= 0.0, cfg, "problem.omega", "omega >= 0 required");
    require(!p.space_terms.empty(), cfg, "problem.space_terms", "at least one space term is required");
    for (const SpaceTerm& term : p.space_terms) {
        try {
            validate_space_term(term);
        } catch (const ConstraintViolation& e) {
            throw ConfigError(line_of(cfg, "problem.space_terms"), "space_terms", e.what());
        }
    }
    require(p.ic == "delta" || p.ic == "gaussian" || p.ic == "box", cfg, "problem.ic",
            "ic must be delta, gaussian or box");
    require(p.ic_width > 0.0, cfg, "problem.ic_width", "ic_width > 0 required");
    require(p.source == "none" || p.source == "gaussian", cfg, "problem.source", "source must be none or gaussian");
    require(p.source_width > 0.0, cfg, "problem.source_width", "source_width > 0 required");
    require(p.family == "auto" || p.family == "one_to_two" || p.family == "zero_to_one", cfg, "problem.family",
            "family must be auto, one_to_two or zero_to_one");
    try {
        frdiff::validate(to_problem_spec(cfg));
    } catch (const ConstraintViolation& e) {
        throw ConfigError(line_of(cfg, cfg.lines.count("problem.family") ? "problem.family" : "problem.gamma1"),
                          "", e.what());
    }

    require(cfg.grid.nx >= 1, cfg, "grid.nx", "nx >= 1 required");
    require(cfg.grid.nx == 1 || cfg.grid.x_max > cfg.grid.x_min, cfg, "grid.x_max", "x_max > x_min required");
    require(!cfg.grid.t.empty(), cfg, "grid.t", "at least one time is required");
    for (double t : cfg.grid.t) require(t > 0.0, cfg, "grid.t", "times must be > 0");

    try {
        frdiff::validate(cfg.quadrature);
    } catch (const ConstraintViolation& e) {
        throw ConfigError(0, "", e.what());
    }
    require(cfg.tol > 0.0 && cfg.tol < 1.0, cfg, "quadrature.tol", "tol must lie in (0, 1)");

    require(cfg.output.format == "csv" || cfg.output.format == "svg", cfg, "output.format",
            "format must be csv or svg");
    require(cfg.output.spectrum_nk >= 2, cfg, "output.spectrum_nk", "spectrum_nk >= 2 required");
    require(cfg.output.spectrum_k_max > 0.0, cfg, "output.spectrum_k_max", "spectrum_k_max > 0 required");
}

std::string serialize_config(const RunConfig& cfg) {
    const auto n = format_number;
    std::ostringstream o;
    const ProblemSection& p = cfg.problem;
    std::string terms;
    for (std::size_t i = 0; i < p.space_terms.size(); ++i) {
        const SpaceTerm& s = p.space_terms[i];
        terms += (i ? ", " : "") + n(s.eta) + ":" + n(s.alpha) + ":" + n(s.theta);
    }
    std::string times;
    for (std::size_t i = 0; i < cfg.grid.t.size(); ++i) times += (i ? ", " : "") + n(cfg.grid.t[i]);

    o << "[problem]\n"
      << "gamma1 = " << n(p.gamma1) << "\n"
      << "delta1 = " << n(p.delta1) << "\n"
      << "gamma2 = " << n(p.gamma2) << "\n"
      << "delta2 = " << n(p.delta2) << "\n"
      << "a = " << n(p.a) << "\n"
      << "omega = " << n(p.omega) << "\n"
      << "space_terms = " << quoted(terms) << "\n"
      << "ic = " << quoted(p.ic) << "\n"
      << "ic_width = " << n(p.ic_width) << "\n"
      << "source = " << quoted(p.source) << "\n"
      << "source_amplitude = " << n(p.source_amplitude) << "\n"
      << "source_width = " << n(p.source_width) << "\n"
      << "family = " << quoted(p.family) << "\n"
      << "\n[grid]\n"
      << "x_min = " << n(cfg.grid.x_min) << "\n"
      << "x_max = " << n(cfg.grid.x_max) << "\n"
      << "nx = " << cfg.grid.nx << "\n"
      << "t = " << quoted(times) << "\n"
      << "\n[quadrature]\n"
      << "k_max = " << n(cfg.quadrature.k_max) << "\n"
      << "panels = " << cfg.quadrature.panels << "\n"
      << "nodes_per_panel = " << cfg.quadrature.nodes_per_panel << "\n"
      << "tail_tol = " << n(cfg.quadrature.tail_tol) << "\n"
      << "grading_exponent = " << n(cfg.quadrature.grading_exponent) << "\n"
      << "realness_tol = " << n(cfg.quadrature.realness_tol) << "\n"
      << "tol = " << n(cfg.tol) << "\n"
      << "\n[output]\n"
      << "path = " << quoted(cfg.output.path) << "\n"
      << "format = " << quoted(cfg.output.format) << "\n"
      << "spectrum_path = " << quoted(cfg.output.spectrum_path) << "\n"
      << "spectrum_nk = " << cfg.output.spectrum_nk << "\n"
      << "spectrum_k_max = " << n(cfg.output.spectrum_k_max) << "\n";
    return o.str();
}

bool same_settings(const RunConfig& x, const RunConfig& y) {
    const ProblemSection &p = x.problem, &q = y.problem;
    if (p.space_terms.size() != q.space_terms.size()) return false;
    for (std::size_t i = 0; i < p.space_terms.size(); ++i) {
        const SpaceTerm &s = p.space_terms[i], &r = q.space_terms[i];
        if (s.eta != r.eta || s.alpha != r.alpha || s.theta != r.theta) return false;
    }
    const QuadratureConfig &u = x.quadrature, &v = y.quadrature;
    return p.gamma1 == q.gamma1 && p.delta1 == q.delta1 && p.gamma2 == q.gamma2 && p.delta2 == q.delta2 &&
           p.a == q.a && p.omega == q.omega && p.ic == q.ic && p.ic_width == q.ic_width && p.source == q.source &&
           p.source_amplitude == q.source_amplitude && p.source_width == q.source_width && p.family == q.family &&
           x.grid.x_min == y.grid.x_min && x.grid.x_max == y.grid.x_max && x.grid.nx == y.grid.nx &&
           x.grid.t == y.grid.t && u.k_max == v.k_max && u.panels == v.panels &&
           u.nodes_per_panel == v.nodes_per_panel && u.tail_tol == v.tail_tol &&
           u.grading_exponent == v.grading_exponent && u.realness_tol == v.realness_tol && x.tol == y.tol &&
           x.output.path == y.output.path && x.output.format == y.output.format &&
           x.output.spectrum_path == y.output.spectrum_path && x.output.spectrum_nk == y.output.spectrum_nk &&
           x.output.spectrum_k_max == y.output.spectrum_k_max;
}

ProblemSpec to_problem_spec(const RunConfig& cfg) {
    const ProblemSection& p = cfg.problem;
    ProblemSpec spec;
    spec.time1 = {p.gamma1, p.delta1};
    spec.time2 = {p.gamma2, p.delta2};
    spec.a = p.a;
    spec.omega = p.omega;
    spec.space_terms = p.space_terms;
    if (p.ic == "gaussian") {
        spec.ic = InitialData::gaussian(p.ic_width);
    } else if (p.ic == "box") {
        spec.ic = InitialData::box(p.ic_width);
    } else {
        spec.ic = InitialData::delta();
    }
    if (p.source == "gaussian") spec.source = Source::gaussian(p.source_amplitude, p.source_width);
    if (p.family == "one_to_two") spec.family = Family::OneToTwo;
    if (p.family == "zero_to_one") spec.family = Family::ZeroToOne;
    return spec;
}

Grid to_grid(const RunConfig& cfg) { return Grid::uniform(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.nx, cfg.grid.t); }

}  // namespace frdiff::cli

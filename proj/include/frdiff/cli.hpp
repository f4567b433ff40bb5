#pragma once

#include <map>
#include <string>
#include <vector>

#include "frdiff/errors.hpp"
#include "frdiff/quadrature.hpp"
#include "frdiff/solution_engine.hpp"
#include "frdiff/spectral_symbols.hpp"
#include "frdiff/types.hpp"

namespace frdiff::cli {

/// Config diagnostic. line() is 0 when no single line is responsible.
class ConfigError : public ConstraintViolation {
public:
    ConfigError(int line, const std::string& key, const std::string& message);
    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct ProblemSection {
    double gamma1 = 1.0;
    double delta1 = 1.0;
    double gamma2 = 0.5;
    double delta2 = 1.0;
    double a = 0.0;
    double omega = 0.0;
    std::vector<SpaceTerm> space_terms{SpaceTerm{}};
    std::string ic = "delta";  // delta | gaussian | box
    double ic_width = 1.0;
    std::string source = "none";  // none | gaussian
    double source_amplitude = 1.0;
    double source_width = 1.0;
    std::string family = "auto";  // auto | one_to_two | zero_to_one
};

struct GridSection {
    double x_min = -5.0;
    double x_max = 5.0;
    int nx = 101;
    std::vector<double> t{1.0};
};

struct OutputSection {
    std::string path;             // empty: standard output
    std::string format = "csv";   // csv | svg
    std::string spectrum_path;    // optional k-space dump
    int spectrum_nk = 201;        // k samples on [0, spectrum_k_max]
    double spectrum_k_max = 10.0;
};

struct RunConfig {
    ProblemSection problem;
    GridSection grid;
    QuadratureConfig quadrature;
    double tol = kDefaultTolerance;  // [quadrature] tol
    OutputSection output;
    /// "section.key" -> line of its definition (diagnostics only).
    std::map<std::string, int> lines;
};

/// Parses and validates an INI-style document with sections [problem],
/// [grid], [quadrature] and [output]. Unknown sections or keys, duplicate
/// keys and malformed values raise ConfigError naming the key and line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Semantic checks; called by parse_config.
void validate(const RunConfig& cfg);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

/// Field-wise equality of the settings (line numbers ignored).
bool same_settings(const RunConfig& x, const RunConfig& y);

ProblemSpec to_problem_spec(const RunConfig& cfg);
Grid to_grid(const RunConfig& cfg);

/// %.17g formatting used for every number the tool prints.
std::string format_number(double v);
std::string format_complex(Complex z);

/// CSV: '#' metadata (resolved config and truncation summary), header x,t,N.
std::string field_csv(const SolutionField& field, const RunConfig& cfg, const std::string& command);
/// Self-contained SVG of N(x) with one polyline per time.
std::string field_svg(const SolutionField& field);
/// k-space samples of the spectral solution. A check column with
/// exp(-t sum eta |k|^alpha) is added when the config is the single-order,
/// reaction-free, symmetric delta-IC case where that closed form holds.
std::string spectrum_csv(const RunConfig& cfg, int threads);

/// Outcome of one verification check.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// Named oracle suites: kernel, heat, spectral, subdiffusion.
std::vector<CheckResult> run_suite(const std::string& suite, int threads);
const std::vector<std::string>& suite_names();

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitVerification = 2, kExitNonConvergence = 3 };

/// Entry point of the frdiff executable.
int run(int argc, char** argv);

}  // namespace frdiff::cli

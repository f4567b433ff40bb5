#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "frdiff/cli.hpp"
#include "frdiff/relaxation_kernel.hpp"
#include "frdiff/special_functions.hpp"

namespace frdiff::cli {

namespace {

int env_threads() {
    const char* env = std::getenv("FRDIFF_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) {
        throw ConstraintViolation("FRDIFF_THREADS must be an integer in [1, 1024]");
    }
    return static_cast<int>(v);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConstraintViolation("cannot write '" + path + "'");
    out << text;
}

std::string report_text(const TruncationReport& r) {
    return "terms_used " + std::to_string(r.terms_used) + "\ntail_estimate " + format_number(r.tail_estimate) +
           "\ndegraded " + (r.degraded ? "true" : "false") + "\nprecision_bits " + std::to_string(r.precision_bits) +
           "\n";
}

struct FieldOptions {
    std::string config;
    std::string out;
    std::string spectrum_out;
    double tol = 0.0;
    int threads = 0;
};

int run_field(const FieldOptions& o, bool green) {
    RunConfig cfg = load_config(o.config);
    if (o.tol > 0.0) cfg.tol = o.tol;
    if (!o.out.empty()) cfg.output.path = o.out;
    if (!o.spectrum_out.empty()) cfg.output.spectrum_path = o.spectrum_out;
    if (green) {
        cfg.problem.ic = "delta";
        cfg.problem.source = "none";
    }
    validate(cfg);
    const int threads = o.threads > 0 ? o.threads : env_threads();
    const ProblemSpec spec = to_problem_spec(cfg);
    const Grid grid = to_grid(cfg);
    const SolutionField field = green ? green_function(spec, grid, cfg.quadrature, cfg.tol, threads)
                                      : solve(spec, grid, cfg.quadrature, cfg.tol, threads);
    const std::string command = green ? "green" : "solve";
    write_text(cfg.output.path, cfg.output.format == "svg" ? field_svg(field) : field_csv(field, cfg, command));
    if (!cfg.output.spectrum_path.empty()) write_text(cfg.output.spectrum_path, spectrum_csv(cfg, threads));
    return kExitOk;
}

int run_verify(const std::string& suite, int threads_flag) {
    const int threads = threads_flag > 0 ? threads_flag : env_threads();
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = suite_names();
    } else {
        suites = {suite};
    }
    bool ok = true;
    for (const std::string& name : suites) {
        for (const CheckResult& r : run_suite(name, threads)) {
            std::cout << (r.passed ? "PASS" : "FAIL") << " [" << name << "] " << r.name
                      << ": measured " << format_number(r.measured) << ", tolerance " << format_number(r.tolerance);
            if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
            std::cout << "\n";
            ok = ok && r.passed;
        }
    }
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"frdiff: fractional reaction-diffusion Green functions and spectral solutions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "frdiff 1.0");

    PrabhakarParams mp;
    double z_re = 0.0, z_im = 0.0, mlf_tol = kDefaultTolerance;
    CLI::App* mlf = app.add_subcommand("mlf", "Three-parameter Mittag-Leffler function E^gamma_{alpha,beta}(z)");
    mlf->add_option("--alpha", mp.alpha, "alpha > 0")->required();
    mlf->add_option("--beta", mp.beta, "beta")->capture_default_str();
    mlf->add_option("--gamma", mp.gamma, "gamma")->capture_default_str();
    mlf->add_option("--z", z_re, "Re z")->required();
    mlf->add_option("--z-im", z_im, "Im z")->capture_default_str();
    mlf->add_option("--tol", mlf_tol, "relative tolerance")->capture_default_str();

    double s_alpha = 2.0, s_theta = 0.0, s_k = 0.0;
    CLI::App* symbol = app.add_subcommand("symbol", "Riesz-Feller symbol psi_alpha^theta(k)");
    symbol->add_option("--alpha", s_alpha, "order in (0, 2]")->required();
    symbol->add_option("--theta", s_theta, "skewness")->capture_default_str();
    symbol->add_option("--k", s_k, "wavenumber")->required();

    KernelParams kp;
    double b_re = 0.0, b_im = 0.0, k_tol = kDefaultTolerance;
    CLI::App* kernel = app.add_subcommand("kernel", "Inverse Laplace kernel of s^(rho-1)/(s^alpha + a s^beta + b)");
    kernel->add_option("--alpha", kp.alpha, "alpha > beta")->required();
    kernel->add_option("--beta", kp.beta, "beta > 0")->required();
    kernel->add_option("--rho", kp.rho, "rho < alpha + 1")->capture_default_str();
    kernel->add_option("--a", kp.a, "coupling a")->capture_default_str();
    kernel->add_option("--b", b_re, "Re b")->capture_default_str();
    kernel->add_option("--b-im", b_im, "Im b")->capture_default_str();
    kernel->add_option("--t", kp.t, "time > 0")->required();
    kernel->add_option("--tol", k_tol, "tolerance")->capture_default_str();

    FieldOptions solve_opts, green_opts;
    auto field_flags = [](CLI::App* sub, FieldOptions& o) {
        sub->add_option("--config", o.config, "config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output path (default: [output] path, else stdout)");
        sub->add_option("--spectrum-out", o.spectrum_out, "also write k-space samples here");
        sub->add_option("--tol", o.tol, "series tolerance (overrides the config)")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "worker threads (fallback: FRDIFF_THREADS, then 1)")
            ->check(CLI::Range(1, 1024));
    };
    CLI::App* solve_cmd = app.add_subcommand("solve", "Evaluate N(x, t) on the configured grid");
    field_flags(solve_cmd, solve_opts);
    CLI::App* green_cmd = app.add_subcommand("green", "Fundamental solution (delta data, no source)");
    field_flags(green_cmd, green_opts);

    std::string suite = "all";
    int verify_threads = 0;
    CLI::App* verify = app.add_subcommand("verify", "Run an oracle suite; exit 2 on a tolerance failure");
    verify->add_option("suite", suite, "kernel | heat | spectral | subdiffusion | all")
        ->check(CLI::IsMember({"kernel", "heat", "spectral", "subdiffusion", "all"}))
        ->capture_default_str();
    verify->add_option("--threads", verify_threads, "worker threads")->check(CLI::Range(1, 1024));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*mlf) {
            std::cout << format_complex(prabhakar(mp, {z_re, z_im}, mlf_tol)) << "\n";
        } else if (*symbol) {
            std::cout << format_complex(riesz_feller_symbol(s_alpha, s_theta, s_k)) << "\n";
        } else if (*kernel) {
            kp.b = {b_re, b_im};
            const KernelValue v = two_term_kernel(kp, k_tol);
            std::cout << format_complex(v.value) << "\n" << report_text(v.report);
        } else if (*solve_cmd) {
            return run_field(solve_opts, false);
        } else if (*green_cmd) {
            return run_field(green_opts, true);
        } else if (*verify) {
            return run_verify(suite, verify_threads);
        }
        return kExitOk;
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const QuadratureFailure& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const RealnessViolation& e) {
        std::cerr << "realness violation: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace frdiff::cli

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "frdiff/types.hpp"

namespace frdiff {

struct QuadratureConfig {
    double k_max = 80.0;
    int panels = 64;
    int nodes_per_panel = 16;
    double tail_tol = 1e-8;
    double grading_exponent = 3.0;
    double realness_tol = 1e-8;
};

void validate(const QuadratureConfig& cfg);

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (n >= 1), cached per thread.
const GaussRule& gauss_legendre(int n);

using SpectralFunction = std::function<Complex(double)>;

/// Result of one inverse Fourier transform
///   f(x) = (1/2pi) int F(k) exp(-i k x) dk.
struct FourierResult {
    double value = 0.0;
    double imag_residual = 0.0;   // bound on |Im f(x)| from the Hermitian check
    double tail_estimate = 0.0;   // bound on the neglected |k| > k_end part
    double error_estimate = 0.0;  // panel discretisation error estimate
    double k_end = 0.0;           // last wavenumber actually integrated
    int panels_used = 0;
};

/// Panel layout on [0, k_max] shared by every x in a grid. Panel width is at
/// most pi / (4 max|x|) so each panel sees under a quarter oscillation. The
/// first uniform panel is split dyadically towards k = 0, where spectra
/// behave like |k|^alpha and are not smooth.
class FourierGrid {
public:
    static constexpr int kOriginLevels = 24;

    FourierGrid(const QuadratureConfig& cfg, double max_abs_x);

    /// Total panel count, origin sub-panels included.
    int panels() const { return uniform_panels_ + kOriginLevels; }
    int uniform_panels() const { return uniform_panels_; }
    int nodes_per_panel() const { return npp_; }
    double panel_width() const { return width_; }
    double k_max() const { return k_max_; }
    double panel_lo(int p) const;
    double panel_hi(int p) const;
    /// Start of the uniform panel that contains panel p.
    double uniform_start(int p) const { return p < kOriginLevels ? 0.0 : width_ * (p - kOriginLevels); }
    /// Wavenumber of node j in panel p.
    double node(int p, int j) const;
    /// The node of each panel also sampled at -k for the Hermitian check.
    int check_node() const { return npp_ / 2; }

private:
    double k_max_;
    int uniform_panels_;
    int npp_;
    double width_;
};

/// Spectrum values on a FourierGrid. Panels are sampled in order and
/// sampling stops once the panel envelope (max |F| on the panel) has fallen
/// below the negligible level set by tail_tol; later panels are treated as
/// zero and accounted for in the tail estimate.
class SampledSpectrum {
public:
    /// Batch evaluator: fills out[i] = F(k[i]).
    using BatchFunction = std::function<void(std::span<const double> k, std::span<Complex> out)>;

    SampledSpectrum(const FourierGrid& grid, const QuadratureConfig& cfg, const BatchFunction& eval);
    SampledSpectrum(const FourierGrid& grid, const QuadratureConfig& cfg, const SpectralFunction& f);

    const FourierGrid& grid() const { return grid_; }
    int panels_sampled() const { return panels_sampled_; }
    bool truncated_early() const { return panels_sampled_ < grid_.panels(); }
    Complex value(int p, int j) const;
    Complex mirror(int p) const { return mirror_[static_cast<std::size_t>(p)]; }
    double envelope(int p) const { return envelope_[static_cast<std::size_t>(p)]; }
    /// max over sampled panels of |F(-k) - conj(F(k))| at the check nodes.
    double hermitian_deviation() const { return hermitian_dev_; }
    /// Bound on (1/2pi) int_{|k| > k_end} |F(k)| dk.
    double tail_estimate() const { return tail_; }

    /// Folded quadrature (1/pi) int_0^{k_end} Re(F(k) e^{-ikx}) dk.
    FourierResult invert(double x) const;

private:
    void sample(const BatchFunction& eval, const QuadratureConfig& cfg);
    void estimate_tail(const QuadratureConfig& cfg);

    FourierGrid grid_;
    std::vector<Complex> values_;  // panels_sampled_ * npp
    std::vector<Complex> mirror_;
    std::vector<double> envelope_;
    int panels_sampled_ = 0;
    double hermitian_dev_ = 0.0;
    double tail_ = 0.0;
};

/// (1/2pi) int F(k) e^{-ikx} dk over |k| <= k_max using the folded rule.
/// Throws QuadratureFailure when the tail bound exceeds cfg.tail_tol and
/// RealnessViolation when F is not Hermitian to cfg.realness_tol.
FourierResult invert_fourier(const SpectralFunction& f, double x, const QuadratureConfig& cfg);

/// Reference two-sided rule over [-k_max, k_max] (no symmetry used). The
/// imaginary part of the integral is returned in imag_residual.
FourierResult invert_fourier_two_sided(const SpectralFunction& f, double x, const QuadratureConfig& cfg);

/// Composite rule for int_0^t g(xi) dxi on breakpoints t (j/n)^exponent.
struct GradedMesh {
    std::vector<double> breakpoints;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n >= 2 intervals, exponent >= 1, Gauss-Legendre with nodes_per_interval
/// points on each interval.
GradedMesh graded_mesh(double t, double exponent, int n, int nodes_per_interval = 16);

/// Grading exponent that integrates xi^{gamma-1} on [0, t] to relative tol
/// with n intervals: 1.5 times the exponent at which the first interval's
/// share n^{-exponent gamma} equals tol.
double required_grading_exponent(double gamma, int n, double tol);

}  // namespace frdiff

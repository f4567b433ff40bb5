#include "prabhakar_series.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "frdiff/errors.hpp"

namespace frdiff::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Once past the peak, stop scanning when terms are this many nats below it.
constexpr double kScanDepth = 50.0;
constexpr std::size_t kCacheCapacity = 4096;

struct TableKey {
    std::uint64_t alpha;
    std::uint64_t gamma;
    BetaForm beta;
    long prec;
    bool operator==(const TableKey&) const = default;
};

struct TableKeyHash {
    std::size_t operator()(const TableKey& k) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(k.alpha);
        mix(k.gamma);
        mix(static_cast<std::uint64_t>(k.prec));
        for (int i = 0; i < k.beta.size; ++i) {
            mix(std::bit_cast<std::uint64_t>(k.beta.coef[static_cast<std::size_t>(i)]));
            mix(static_cast<std::uint64_t>(k.beta.mult[static_cast<std::size_t>(i)]));
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

double log_abs_rgamma(double x) {
    if (is_gamma_pole(x)) return -kInf;
    int sign = 0;
    return -lgamma_r(x, &sign);
}

SeriesProfile scan_prabhakar(const PrabhakarParams& p, double log_abs_z, int cap) {
    SeriesProfile prof;
    double log_poch = 0.0;
    double best = -kInf;
    int argmax = 0;
    int regular_from = -1;
    bool any = false;
    int n = 0;
    for (; n < cap; ++n) {
        if (n > 0) {
            const double factor = p.gamma + n - 1;
            if (factor == 0.0) {
                prof.last = n - 1;
                break;
            }
            log_poch += std::log(std::fabs(factor)) - std::log(static_cast<double>(n));
        }
        const double x = n * p.alpha + p.beta;
        prof.max_gamma_arg = std::max(prof.max_gamma_arg, x);
        const double power = n == 0 ? 0.0 : n * log_abs_z;
        const double L = log_poch + log_abs_rgamma(x) + power;
        if (L > -kInf) {
            if (!any) {
                prof.log_first = L;
                any = true;
            }
            if (L > best) {
                best = L;
                argmax = n;
            }
        }
        if (log_abs_z == -kInf) {
            prof.last = 0;
            break;
        }
        if (regular_from < 0 && x > 2.0 && p.gamma + n > 1.0) regular_from = n;
        if (regular_from >= 0 && n > argmax && L < best - kScanDepth) break;
    }
    prof.scan_end = std::min(n, cap);
    prof.empty = !any;
    prof.log_max = any ? best : -kInf;
    if (!any) prof.log_first = -kInf;
    prof.peak = std::max(argmax, regular_from < 0 ? prof.scan_end : regular_from);
    if (prof.last >= 0) prof.peak = std::min(prof.peak, prof.last);
    return prof;
}

long quantize_precision(double bits) {
    if (!(bits > 64.0)) return 64;
    return static_cast<long>(std::ceil(bits / 64.0)) * 64;
}

void BetaForm::evaluate(MpReal& out) const {
    MpReal term(out.precision());
    mpfr_set_zero(out.get(), 1);
    for (int i = 0; i < size; ++i) {
        const auto k = static_cast<std::size_t>(i);
        mpfr_set_d(term.get(), coef[k], MPFR_RNDN);
        mpfr_mul_si(term.get(), term.get(), mult[k], MPFR_RNDN);
        mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
    }
}

CoefficientTable::CoefficientTable(const PrabhakarParams& p, const BetaForm& beta, long prec)
    : params_(p),
      prec_(prec),
      pochhammer_ratio_(prec, 1.0),
      alpha_(prec, p.alpha),
      beta_(prec),
      gamma_(prec, p.gamma),
      arg_(prec),
      scratch_(prec) {
    beta.evaluate(beta_);
}

const MpReal& CoefficientTable::coefficient(int n) {
    while (static_cast<int>(coef_.size()) <= n) extend();
    return coef_[static_cast<std::size_t>(n)];
}

void CoefficientTable::extend() {
    const auto n = static_cast<unsigned long>(coef_.size());
    if (n > 0) {
        // (gamma)_n / n! = (gamma)_{n-1} / (n-1)! * (gamma + n - 1) / n
        mpfr_add_ui(scratch_.get(), gamma_.get(), n - 1, MPFR_RNDN);
        mpfr_mul(pochhammer_ratio_.get(), pochhammer_ratio_.get(), scratch_.get(), MPFR_RNDN);
        mpfr_div_ui(pochhammer_ratio_.get(), pochhammer_ratio_.get(), n, MPFR_RNDN);
    }
    mpfr_mul_ui(arg_.get(), alpha_.get(), n, MPFR_RNDN);
    mpfr_add(arg_.get(), arg_.get(), beta_.get(), MPFR_RNDN);

    MpReal c(prec_);
    const bool pole = mpfr_sgn(arg_.get()) <= 0 && mpfr_integer_p(arg_.get());
    if (!pochhammer_ratio_.is_zero() && !pole) {
        mpfr_gamma(scratch_.get(), arg_.get(), MPFR_RNDN);
        mpfr_div(c.get(), pochhammer_ratio_.get(), scratch_.get(), MPFR_RNDN);
    }
    coef_.push_back(std::move(c));
}

std::shared_ptr<CoefficientTable> coefficient_table_ptr(const PrabhakarParams& p, const BetaForm& beta,
                                                        long prec) {
    thread_local std::unordered_map<TableKey, std::shared_ptr<CoefficientTable>, TableKeyHash> cache;
    const TableKey key{std::bit_cast<std::uint64_t>(p.alpha), std::bit_cast<std::uint64_t>(p.gamma), beta, prec};
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (cache.size() >= kCacheCapacity) cache.clear();
    auto table = std::make_shared<CoefficientTable>(p, beta, prec);
    cache.emplace(key, table);
    return table;
}

MpSeriesSum sum_prabhakar_mp(const PrabhakarParams& p, const BetaForm& beta, const MpComplex& z, long prec,
                             const SeriesProfile& profile, double log2_abs_stop, int cap) {
    const auto table = coefficient_table_ptr(p, beta, prec);
    MpSeriesSum out(prec);
    MpComplex power(prec, Complex{1.0, 0.0});
    MpComplex next(prec);
    MpComplex term(prec);
    double prev = -kInf;
    for (int n = 0;; ++n) {
        if (n >= cap) {
            throw NonConvergence("Prabhakar series: term cap " + std::to_string(cap) +
                                 " reached before the tail fell below tolerance");
        }
        const MpReal& c = table->coefficient(n);
        const bool final_index = profile.last >= 0 && n >= profile.last;
        if (!c.is_zero()) {
            scale(term, c, power);
            add_to(out.value, term);
            const double lt = term.log2_abs();
            out.log2_max_term = std::max(out.log2_max_term, lt);
            out.terms = n + 1;
            if (final_index) {
                out.log2_tail = -kInf;
                break;
            }
            // Stop once the geometric tail bound, not just the term, is small:
            // right after the peak the ratio is close to 1.
            if (n > profile.peak && lt < log2_abs_stop && prev > -kInf && lt < prev) {
                const double q = std::exp2(lt - prev);
                const double tail = lt + std::log2(q / (1.0 - q));
                if (tail < log2_abs_stop) {
                    out.log2_tail = tail;
                    break;
                }
            }
            prev = lt;
        } else if (final_index) {
            out.terms = n + 1;
            out.log2_tail = -kInf;
            break;
        }
        mul(next, power, z);
        std::swap(power, next);
    }
    return out;
}

}  // namespace frdiff::detail

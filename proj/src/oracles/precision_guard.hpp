#pragma once

#include <mutex>

#include "frdiff/oracles.hpp"

namespace frdiff::oracle::detail {

// Boost's default MPFR precision is process-wide, so oracle evaluations are
// serialised while they hold a non-default precision.
std::mutex& precision_mutex();

class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10) : lock_(precision_mutex()), saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    std::lock_guard<std::mutex> lock_;
    unsigned saved_;
};

}  // namespace frdiff::oracle::detail

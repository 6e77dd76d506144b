#pragma once

#include <cmath>
#include <cstddef>

#include "qdunkl/errors.hpp"

namespace qdunkl {

/// Stopping policy shared by every truncated series in the library.
struct TruncationControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    std::size_t max_terms = 10000;

    /// Throws DomainError unless rel_tol > 0, abs_tol >= 0 and max_terms >= 8.
    void validate() const;
};

/// A truncated series sum together with a rigorous bound on what was dropped.
struct SeriesValue {
    double value = 0.0;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
};

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    /// Multiply the running state by an exact power of two.
    void scale_pow2(int exponent) noexcept {
        sum_ = std::ldexp(sum_, exponent);
        comp_ = std::ldexp(comp_, exponent);
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace qdunkl

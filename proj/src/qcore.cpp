#include "qdunkl/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdunkl/errors.hpp"

namespace qdunkl {

void TruncationControl::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
        throw DomainError("TruncationControl: rel_tol must be positive and finite");
    }
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) {
        throw DomainError("TruncationControl: abs_tol must be nonnegative and finite");
    }
    if (max_terms < 8) {
        throw DomainError("TruncationControl: max_terms must be at least 8");
    }
}

QParam::QParam(double q) : q_(q), one_minus_q_(1.0 - q), log_q_(0.0) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("QParam: q must lie strictly inside (0, 1), got " + std::to_string(q));
    }
    log_q_ = std::log(q_);
}

double QParam::pow(double a) const noexcept { return std::pow(q_, a); }

namespace {

// 1 - q^a without cancellation for q^a near 1.
double one_minus_qpow(double a, const QParam& q) {
    const double p = q.pow(a);
    if (p < 0.5 || p > 2.0) {
        return 1.0 - p;
    }
    return -std::expm1(a * q.log());
}

}  // namespace

double q_integer(std::size_t n, const QParam& q) {
    if (n == 0) {
        return 0.0;
    }
    return one_minus_qpow(static_cast<double>(n), q) / q.complement();
}

double q_integer(std::size_t n, ClassicalLimit) { return static_cast<double>(n); }

double q_bracket_real(double a, const QParam& q) {
    if (!std::isfinite(a)) {
        throw DomainError("q_bracket_real: exponent must be finite");
    }
    if (a == 0.0) {
        return 0.0;
    }
    return one_minus_qpow(a, q) / q.complement();
}

double q_factorial(std::size_t n, const QParam& q) {
    double result = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        result *= q_integer(k, q);
    }
    return result;
}

double q_binomial(std::size_t n, std::size_t k, const QParam& q) {
    if (k > n) {
        throw DomainError("q_binomial: k must not exceed n");
    }
    const std::size_t m = std::min(k, n - k);
    double result = 1.0;
    for (std::size_t i = 1; i <= m; ++i) {
        result *= q_integer(n - m + i, q);
        result /= q_integer(i, q);
    }
    return result;
}

double q_pochhammer(double x, const QParam& q, std::size_t n) {
    double result = 1.0;
    double qj = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        result *= 1.0 - qj * x;
        qj *= q.value();
    }
    return result;
}

SeriesValue q_pochhammer_infinite(double x, const QParam& q, const TruncationControl& trunc) {
    trunc.validate();
    SeriesValue out;
    double product = 1.0;
    for (std::size_t j = 0; j < trunc.max_terms; ++j) {
        const double y = q.pow(static_cast<double>(j)) * x;
        const double ay = std::fabs(y);
        if (ay < 1.0) {
            // Remaining factors j, j+1, ... change the product by at most
            // a factor exp(+-tail_log).
            const double tail_log = ay / (q.complement() * (1.0 - ay));
            const double tail = std::fabs(product) * std::expm1(tail_log);
            if (ay < trunc.abs_tol || tail <= trunc.rel_tol * std::fabs(product) + trunc.abs_tol) {
                out.value = product;
                out.terms_used = j;
                out.tail_bound = tail;
                return out;
            }
        }
        product *= 1.0 - y;
        if (product == 0.0) {
            out.value = 0.0;
            out.terms_used = j + 1;
            out.tail_bound = 0.0;
            return out;
        }
    }
    throw TruncationError("q_pochhammer_infinite: tail certificate not reached", product,
                          trunc.max_terms);
}

namespace {

// Sum of t_0 = 1, t_{k+1} = t_k * ratio(k), where |ratio(j)| <= majorant(k)
// for every j >= k. Stops once the geometric tail is certified.
template <typename Ratio, typename Majorant>
SeriesValue sum_ratio_series(Ratio ratio, Majorant majorant, const TruncationControl& trunc,
                             const char* who) {
    trunc.validate();
    CompensatedSum sum;
    double term = 1.0;
    for (std::size_t k = 0; k < trunc.max_terms; ++k) {
        sum.add(term);
        if (!std::isfinite(sum.value())) {
            throw RangeError(std::string(who) + ": partial sum overflowed");
        }
        const double r = majorant(k);
        if (r < 1.0) {
            const double tail = std::fabs(term) * r / (1.0 - r);
            const double s = sum.value();
            if (tail <= trunc.rel_tol * std::fabs(s) + trunc.abs_tol) {
                return SeriesValue{s, k + 1, tail};
            }
        }
        term *= ratio(k);
    }
    throw TruncationError(std::string(who) + ": tail certificate not reached", sum.value(),
                          trunc.max_terms);
}

}  // namespace

SeriesValue q_exp_small(double z, const QParam& q, const TruncationControl& trunc) {
    if (!(std::fabs(z) * q.complement() < 1.0)) {
        throw DomainError("q_exp_small: requires |z| < 1/(1-q)");
    }
    auto ratio = [&](std::size_t k) { return z / q_integer(k + 1, q); };
    auto majorant = [&](std::size_t k) { return std::fabs(z) / q_integer(k + 1, q); };
    return sum_ratio_series(ratio, majorant, trunc, "q_exp_small");
}

SeriesValue q_exp_big(double z, const QParam& q, const TruncationControl& trunc) {
    if (!std::isfinite(z)) {
        throw DomainError("q_exp_big: argument must be finite");
    }
    auto ratio = [&](std::size_t k) {
        return q.pow(static_cast<double>(k)) * z / q_integer(k + 1, q);
    };
    auto majorant = [&](std::size_t k) {
        return q.pow(static_cast<double>(k)) * std::fabs(z) / q_integer(k + 1, q);
    };
    return sum_ratio_series(ratio, majorant, trunc, "q_exp_big");
}

SeriesValue q_exp_big_product(double z, const QParam& q, const TruncationControl& trunc) {
    return q_pochhammer_infinite(-q.complement() * z, q, trunc);
}

}  // namespace qdunkl

#include "qdunkl/dunkl.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdunkl/errors.hpp"

namespace qdunkl {

DunklParam::DunklParam(double mu) : mu_(mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw DomainError("DunklParam: mu must be finite and nonnegative");
    }
}

double gamma_mu_q(std::size_t k, const DunklParam& mu, const QParam& q) {
    double g = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        g *= q_bracket_real(dunkl_exponent(j, mu), q);
        if (!std::isfinite(g)) {
            throw RangeError("gamma_mu_q: value overflows at k=" + std::to_string(j) +
                             "; use log_gamma_mu_q");
        }
    }
    return g;
}

double log_gamma_mu_q(std::size_t k, const DunklParam& mu, const QParam& q) {
    CompensatedSum s;
    for (std::size_t j = 1; j <= k; ++j) {
        s.add(std::log(q_bracket_real(dunkl_exponent(j, mu), q)));
    }
    return s.value();
}

double gamma_mu_q_explicit(std::size_t k, const DunklParam& mu, const QParam& q) {
    const QParam q2 = q.squared();
    const double odd = q_pochhammer(q.pow(2.0 * mu.value() + 1.0), q2, (k + 1) / 2);
    const double even = q_pochhammer(q2.value(), q2, k / 2);
    const double value = odd * even / std::pow(q.complement(), static_cast<double>(k));
    if (!std::isfinite(value)) {
        throw RangeError("gamma_mu_q_explicit: value overflows");
    }
    return value;
}

double gamma_mu_classical(std::size_t k, const DunklParam& mu) {
    double g = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        g *= dunkl_exponent(j, mu);
        if (!std::isfinite(g)) {
            throw RangeError("gamma_mu_classical: value overflows");
        }
    }
    return g;
}

double dunkl_E_term_ratio(std::size_t k, double x, const DunklParam& mu, const QParam& q) {
    return q.pow(static_cast<double>(k)) * x / q_bracket_real(dunkl_exponent(k + 1, mu), q);
}

namespace {

// Positive series with t_0 = 1 and t_{k+1} = t_k * ratio(k). majorant(k)
// bounds every ratio(j), j >= k, so the dropped tail after t_k is at most
// t_k * r / (1 - r).
template <typename Ratio, typename Majorant>
SeriesValue sum_positive(Ratio ratio, Majorant majorant, const TruncationControl& trunc,
                         const char* who) {
    trunc.validate();
    CompensatedSum sum;
    double term = 1.0;
    for (std::size_t k = 0; k < trunc.max_terms; ++k) {
        sum.add(term);
        const double s = sum.value();
        if (!std::isfinite(s)) {
            throw RangeError(std::string(who) + ": value overflows a double");
        }
        const double r = majorant(k);
        if (r < 1.0) {
            const double tail = term * r / (1.0 - r);
            if (tail <= trunc.rel_tol * s + trunc.abs_tol) {
                return SeriesValue{s, k + 1, tail};
            }
        }
        term *= ratio(k);
    }
    throw TruncationError(std::string(who) + ": tail certificate not reached", sum.value(),
                          trunc.max_terms);
}

}  // namespace

SeriesValue dunkl_exp_e(double x, const DunklParam& mu, const QParam& q,
                        const TruncationControl& trunc) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("dunkl_exp_e: x must be finite and nonnegative");
    }
    if (!(x * q.complement() < 1.0)) {
        throw DomainError("dunkl_exp_e: series diverges for x (1-q) >= 1");
    }
    auto ratio = [&](std::size_t k) {
        return x / q_bracket_real(dunkl_exponent(k + 1, mu), q);
    };
    // [2 mu theta_{j+1} + j + 1]_q >= [k+1]_q for all j >= k.
    auto majorant = [&](std::size_t k) {
        return x / q_integer(k + 1, q);
    };
    return sum_positive(ratio, majorant, trunc, "dunkl_exp_e");
}

SeriesValue dunkl_exp_E(double x, const DunklParam& mu, const QParam& q,
                        const TruncationControl& trunc) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("dunkl_exp_E: x must be finite and nonnegative");
    }
    auto ratio = [&](std::size_t k) { return dunkl_E_term_ratio(k, x, mu, q); };
    auto majorant = [&](std::size_t k) {
        return q.pow(static_cast<double>(k)) * x / q_integer(k + 1, q);
    };
    return sum_positive(ratio, majorant, trunc, "dunkl_exp_E");
}

}  // namespace qdunkl

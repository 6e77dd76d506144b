#pragma once

// q-calculus primitives: q-integers, q-factorials, q-binomials,
// q-Pochhammer symbols and the two classical q-exponentials.

#include <cstddef>

#include "qdunkl/series.hpp"

namespace qdunkl {

/// Deformation parameter, strictly inside (0, 1). The classical case q = 1
/// is never stored; use the ClassicalLimit overloads instead.
class QParam {
public:
    explicit QParam(double q);

    double value() const noexcept { return q_; }
    /// 1 - q, computed once.
    double complement() const noexcept { return one_minus_q_; }
    double log() const noexcept { return log_q_; }

    /// q^a for real a.
    double pow(double a) const noexcept;

    /// q squared, as a parameter in its own right (base of the Dunkl products).
    QParam squared() const { return QParam(q_ * q_); }

private:
    double q_;
    double one_minus_q_;
    double log_q_;
};

/// Tag selecting the q -> 1 limit of a q-formula.
struct ClassicalLimit {};

/// [n]_q = (1 - q^n) / (1 - q).
double q_integer(std::size_t n, const QParam& q);
/// [n]_1 = n.
double q_integer(std::size_t n, ClassicalLimit);

/// [a]_q = (1 - q^a) / (1 - q) for a real exponent a, negative when a < 0.
/// Throws DomainError for non-finite a.
double q_bracket_real(double a, const QParam& q);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
double q_factorial(std::size_t n, const QParam& q);

/// Gaussian binomial [n k]_q. Throws DomainError when k > n.
double q_binomial(std::size_t n, std::size_t k, const QParam& q);

/// Finite q-shifted factorial (x; q)_n = prod_{j<n} (1 - q^j x).
double q_pochhammer(double x, const QParam& q, std::size_t n);

/// Infinite product (x; q)_inf. The returned tail_bound bounds
/// |(x;q)_inf - value| through the multiplicative tail
/// exp(sum_{j>=J} |q^j x| / (1 - |q^J x|)).
SeriesValue q_pochhammer_infinite(double x, const QParam& q,
                                  const TruncationControl& trunc = {});

/// e_q(z) = sum z^k / [k]_q!, valid for |z| < 1/(1-q).
SeriesValue q_exp_small(double z, const QParam& q,
                        const TruncationControl& trunc = {});

/// E_q(z) = sum q^{k(k-1)/2} z^k / [k]_q!, entire in z.
SeriesValue q_exp_big(double z, const QParam& q,
                      const TruncationControl& trunc = {});

/// Product representation prod_{j>=0} (1 + (1-q) q^j z) of E_q(z).
SeriesValue q_exp_big_product(double z, const QParam& q,
                              const TruncationControl& trunc = {});

}  // namespace qdunkl

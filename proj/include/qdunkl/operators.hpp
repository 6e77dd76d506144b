#pragma once

// The Dunkl q-parametric Szasz-Mirakjan operator D*_{n,q}, its nodes,
// weights and moments, plus the classical, Sucu and Icoz operators it
// generalizes.

#include <cstddef>
#include <utility>

#include "qdunkl/dunkl.hpp"
#include "qdunkl/qcore.hpp"
#include "qdunkl/series.hpp"
#include "qdunkl/test_function.hpp"

namespace qdunkl {

struct OperatorParams {
    OperatorParams(int n, QParam q, DunklParam mu, TruncationControl trunc = {});

    int n;
    QParam q;
    DunklParam mu;
    TruncationControl trunc;

    /// [n]_q
    double n_bracket() const { return q_integer(static_cast<std::size_t>(n), q); }
};

/// Operator value with a certificate covering series truncation and a
/// floating-point allowance for the term recurrence.
struct OperatorValue {
    double value = 0.0;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
};

/// t_k = q^{2-k} [2 mu theta_k + k]_q / [n]_q.
double node(std::size_t k, const OperatorParams& params);

/// The printed form (1 - q^{2 mu theta_k + k}) / (q^{k-2} (1 - q^n)).
double node_direct(std::size_t k, const OperatorParams& params);

/// Normalized kernel weight ([n]_q x)^k q^{k(k-1)/2} / (gamma(k) E_{mu,q}([n]_q x)).
/// The normalizer is certified to trunc.rel_tol, which bounds the relative
/// error of the weight up to rounding.
double weight(std::size_t k, double x, const OperatorParams& params);

/// D*_{n,q}(f; x). Returns f(0) exactly at x = 0.
OperatorValue apply(const TestFunction& f, double x, const OperatorParams& params);

/// D*(e_j; x) for j in {0, 1, 2}.
OperatorValue moment(int j, double x, const OperatorParams& params);

/// D*((e_1 - x)^j; x) for j in {1, 2}, summed directly.
OperatorValue central_moment(int j, double x, const OperatorParams& params);

enum class MomentKind { raw, central };

struct MomentBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Closed-form sandwich for the raw second moment
///   q x^2 + q^{2(1+mu)}/[n]_q [1 -+ 2mu]_q x
/// or the central one (same with (1-q) x^2).
MomentBounds moment_bounds(double x, const OperatorParams& params, MomentKind kind);

/// e^{-nx} sum (nx)^k / k! f(k/n).
OperatorValue szasz_classical(const TestFunction& f, double x, int n,
                              const TruncationControl& trunc = {});

/// Sucu's Dunkl-Szasz operator with nodes (k + 2 mu theta_k)/n.
OperatorValue dunkl_szasz_sucu(const TestFunction& f, double x, int n, const DunklParam& mu,
                               const TruncationControl& trunc = {});

/// Icoz's q-Dunkl operator with kernel e_{mu,q}. Requires (1 - q^n) x < 1
/// for the kernel series to converge; throws DomainError otherwise.
OperatorValue icoz_q_dunkl(const TestFunction& f, double x, const OperatorParams& params);

/// Node of the Icoz operator, (1 - q^{2 mu theta_k + k}) / (1 - q^n).
double icoz_node(std::size_t k, const OperatorParams& params);

struct LimitConsistency {
    double q = 0.0;
    OperatorValue dstar;
    OperatorValue sucu;
    double difference = 0.0;
};

/// Compare D* at q close to 1 with Sucu's operator at the same (n, mu).
LimitConsistency limit_consistency_check(const TestFunction& f, double x, int n,
                                         const DunklParam& mu, double q = 1.0 - 1e-4,
                                         const TruncationControl& trunc = {});

}  // namespace qdunkl

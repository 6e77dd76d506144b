#include "qdunkl/operators.hpp"

#include <cmath>
#include <string>

#include "kernel_sum.hpp"
#include "qdunkl/errors.hpp"

namespace qdunkl {

OperatorParams::OperatorParams(int n_, QParam q_, DunklParam mu_, TruncationControl trunc_)
    : n(n_), q(q_), mu(mu_), trunc(trunc_) {
    if (n < 1) {
        throw DomainError("OperatorParams: n must be at least 1");
    }
    trunc.validate();
}

double node(std::size_t k, const OperatorParams& params) {
    if (k == 0) {
        return 0.0;
    }
    const double a = dunkl_exponent(k, params.mu);
    return params.q.pow(2.0 - static_cast<double>(k)) * q_bracket_real(a, params.q) /
           params.n_bracket();
}

double node_direct(std::size_t k, const OperatorParams& params) {
    const QParam& q = params.q;
    const double a = dunkl_exponent(k, params.mu);
    return (1.0 - q.pow(a)) /
           (q.pow(static_cast<double>(k) - 2.0) * (1.0 - q.pow(static_cast<double>(params.n))));
}

double icoz_node(std::size_t k, const OperatorParams& params) {
    const QParam& q = params.q;
    return q_bracket_real(dunkl_exponent(k, params.mu), q) * q.complement() /
           (1.0 - q.pow(static_cast<double>(params.n)));
}

namespace {

void require_point(double x, const char* who) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": x must be finite and nonnegative");
    }
}

struct DStarKernel {
    const OperatorParams& p;
    double z;  // [n]_q x

    double ratio(std::size_t k) const { return dunkl_E_term_ratio(k, z, p.mu, p.q); }
    double ratio_majorant(std::size_t k) const {
        return p.q.pow(static_cast<double>(k)) * z / q_integer(k + 1, p.q);
    }
    double node(std::size_t k) const { return qdunkl::node(k, p); }
    // t_j <= q^{2-j} / ((1-q) [n]_q).
    detail::NodeEnvelope envelope(std::size_t k) const {
        const double c = p.q.value() * p.q.value() / (p.q.complement() * p.n_bracket());
        return {c * p.q.pow(-static_cast<double>(k)), 1.0 / p.q.value()};
    }
};

struct IcozKernel {
    const OperatorParams& p;
    double z;

    double ratio(std::size_t k) const {
        return z / q_bracket_real(dunkl_exponent(k + 1, p.mu), p.q);
    }
    double ratio_majorant(std::size_t k) const { return z / q_integer(k + 1, p.q); }
    double node(std::size_t k) const { return icoz_node(k, p); }
    detail::NodeEnvelope envelope(std::size_t) const {
        return {1.0 / (1.0 - p.q.pow(static_cast<double>(p.n))), 1.0};
    }
};

// Sucu's kernel; mu = 0 gives the Poisson weights of the classical operator
// but the classical operator below keeps its own kernel as an independent path.
struct SucuKernel {
    double z;  // n x
    int n;
    DunklParam mu;

    double ratio(std::size_t k) const { return z / dunkl_exponent(k + 1, mu); }
    double ratio_majorant(std::size_t k) const { return z / static_cast<double>(k + 1); }
    double node(std::size_t k) const { return dunkl_exponent(k, mu) / n; }
    // (j + 2mu)/n <= ((k + 2mu)/n) ((k + 1 + 2mu)/(k + 2mu))^{j-k} for j > k >= 1.
    detail::NodeEnvelope envelope(std::size_t k) const {
        const double a = static_cast<double>(k) + 2.0 * mu.value();
        return {a / n, (a + 1.0) / a};
    }
};

struct PoissonKernel {
    double z;  // n x
    int n;

    double ratio(std::size_t k) const { return z / static_cast<double>(k + 1); }
    double ratio_majorant(std::size_t k) const { return z / static_cast<double>(k + 1); }
    double node(std::size_t k) const { return static_cast<double>(k) / n; }
    detail::NodeEnvelope envelope(std::size_t k) const {
        const double a = static_cast<double>(k);
        return {a / n, (a + 1.0) / a};
    }
};

OperatorValue at_origin(const TestFunction& f) {
    const double v = f.eval(0.0);
    if (!std::isfinite(v)) {
        throw FunctionDomainError("test function '" + f.name + "' is not finite at 0", 0.0);
    }
    return OperatorValue{v, 1, 0.0};
}

}  // namespace

double weight(std::size_t k, double x, const OperatorParams& params) {
    require_point(x, "weight");
    if (x == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    const DStarKernel kernel{params, params.n_bracket() * x};
    // Normalizer E_{mu,q}([n]_q x) in the same power-of-two scaling as the terms.
    constexpr int rescale_exponent = 512;
    const double threshold = std::ldexp(1.0, rescale_exponent);
    CompensatedSum total;
    double term = 1.0;
    double target = (k == 0) ? 1.0 : 0.0;
    bool have_target = (k == 0);
    bool certified = false;
    for (std::size_t j = 0; j < params.trunc.max_terms; ++j) {
        total.add(term);
        if (j >= k && j >= 1) {
            const double r = kernel.ratio_majorant(j);
            if (r < 1.0 && term * r / (1.0 - r) <= params.trunc.rel_tol * total.value()) {
                certified = true;
                break;
            }
        }
        term *= kernel.ratio(j);
        if (j + 1 == k) {
            target = term;
            have_target = true;
        }
        if (term > threshold) {
            term = std::ldexp(term, -rescale_exponent);
            total.scale_pow2(-rescale_exponent);
            if (have_target) {
                target = std::ldexp(target, -rescale_exponent);
            }
        }
    }
    if (!certified) {
        throw TruncationError("weight: normalizer not certified within max_terms", total.value(),
                              params.trunc.max_terms);
    }
    return target / total.value();
}

OperatorValue apply(const TestFunction& f, double x, const OperatorParams& params) {
    require_point(x, "apply");
    if (x == 0.0) {
        return at_origin(f);
    }
    const DStarKernel kernel{params, params.n_bracket() * x};
    return detail::sum_kernel(kernel, f, params.trunc, "apply");
}

OperatorValue moment(int j, double x, const OperatorParams& params) {
    if (j < 0 || j > 2) {
        throw DomainError("moment: order must be 0, 1 or 2");
    }
    return apply(monomial(j), x, params);
}

OperatorValue central_moment(int j, double x, const OperatorParams& params) {
    require_point(x, "central_moment");
    TestFunction f;
    if (j == 1) {
        f.name = "e1-x";
        f.eval = [x](double t) { return t - x; };
        f.growth = GrowthBound{x, 1.0, 1.0};
    } else if (j == 2) {
        f.name = "(e1-x)^2";
        f.eval = [x](double t) { return (t - x) * (t - x); };
        f.growth = GrowthBound{2.0 * x * x, 2.0, 2.0};
    } else {
        throw DomainError("central_moment: order must be 1 or 2");
    }
    return apply(f, x, params);
}

MomentBounds moment_bounds(double x, const OperatorParams& params, MomentKind kind) {
    require_point(x, "moment_bounds");
    const QParam& q = params.q;
    const double mu = params.mu.value();
    const double quad = (kind == MomentKind::raw ? q.value() : q.complement()) * x * x;
    const double lead = q.pow(2.0 * (1.0 + mu)) / params.n_bracket();
    return MomentBounds{quad + lead * q_bracket_real(1.0 - 2.0 * mu, q) * x,
                        quad + lead * q_bracket_real(1.0 + 2.0 * mu, q) * x};
}

OperatorValue szasz_classical(const TestFunction& f, double x, int n,
                              const TruncationControl& trunc) {
    require_point(x, "szasz_classical");
    if (n < 1) {
        throw DomainError("szasz_classical: n must be at least 1");
    }
    if (x == 0.0) {
        return at_origin(f);
    }
    const PoissonKernel kernel{n * x, n};
    return detail::sum_kernel(kernel, f, trunc, "szasz_classical");
}

OperatorValue dunkl_szasz_sucu(const TestFunction& f, double x, int n, const DunklParam& mu,
                               const TruncationControl& trunc) {
    require_point(x, "dunkl_szasz_sucu");
    if (n < 1) {
        throw DomainError("dunkl_szasz_sucu: n must be at least 1");
    }
    if (x == 0.0) {
        return at_origin(f);
    }
    const SucuKernel kernel{n * x, n, mu};
    return detail::sum_kernel(kernel, f, trunc, "dunkl_szasz_sucu");
}

OperatorValue icoz_q_dunkl(const TestFunction& f, double x, const OperatorParams& params) {
    require_point(x, "icoz_q_dunkl");
    const double z = params.n_bracket() * x;
    if (!(z * params.q.complement() < 1.0)) {
        throw DomainError("icoz_q_dunkl: kernel e_{mu,q}([n]_q x) diverges for (1-q^n) x >= 1");
    }
    if (x == 0.0) {
        return at_origin(f);
    }
    const IcozKernel kernel{params, z};
    return detail::sum_kernel(kernel, f, params.trunc, "icoz_q_dunkl");
}

LimitConsistency limit_consistency_check(const TestFunction& f, double x, int n,
                                         const DunklParam& mu, double q,
                                         const TruncationControl& trunc) {
    const OperatorParams params(n, QParam(q), mu, trunc);
    LimitConsistency out;
    out.q = q;
    out.dstar = apply(f, x, params);
    out.sucu = dunkl_szasz_sucu(f, x, n, mu, trunc);
    out.difference = std::fabs(out.dstar.value - out.sucu.value);
    return out;
}

}  // namespace qdunkl

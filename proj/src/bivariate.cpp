#include "qdunkl/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdunkl/errors.hpp"

namespace qdunkl {

void TestFunction2D::validate() const {
    if (!eval) {
        throw DomainError("TestFunction2D '" + name + "': missing evaluator");
    }
    if (lipschitz && !(lipschitz->M > 0.0 && lipschitz->nu1 > 0.0 && lipschitz->nu1 <= 1.0 &&
                       lipschitz->nu2 > 0.0 && lipschitz->nu2 <= 1.0)) {
        throw DomainError("TestFunction2D '" + name + "': invalid Lipschitz data");
    }
    if (exact_modulus && !uniformly_continuous) {
        throw DomainError("TestFunction2D '" + name + "': a finite modulus implies uniform continuity");
    }
    if (separable) {
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double u = 4.0 * i / 9.0;
                const double v = 4.0 * j / 9.0;
                const double direct = eval(u, v);
                const double product = separable->first(u) * separable->second(v);
                if (std::fabs(direct - product) > 1e-12 * std::max(1.0, std::fabs(direct))) {
                    throw DomainError("TestFunction2D '" + name +
                                      "': separable factorization does not match eval");
                }
            }
        }
    }
}

namespace {

double growth_factor(const TestFunction& f) {
    if (!f.growth) {
        throw DomainError("separable factor '" + f.name + "' needs a growth bound");
    }
    return std::max(f.growth->constant, f.growth->coefficient);
}

}  // namespace

TestFunction2D separable_function(std::string name, TestFunction g, TestFunction h) {
    TestFunction2D f;
    f.name = std::move(name);
    f.eval = [ge = g.eval, he = h.eval](double u, double v) { return ge(u) * he(v); };
    f.growth = Growth2D{growth_factor(g) * growth_factor(h), g.growth->power, h.growth->power};
    f.separable = std::make_pair(std::move(g), std::move(h));
    return f;
}

TestFunction2D monomial2(int i, int j) {
    TestFunction2D f = separable_function("e" + std::to_string(i) + std::to_string(j),
                                          monomial(i), monomial(j));
    return f;
}

TestFunction2D make_test_function_2d(std::string_view name) {
    if (name.size() == 3 && name[0] == 'e' && name[1] >= '0' && name[1] <= '2' && name[2] >= '0' &&
        name[2] <= '2') {
        return monomial2(name[1] - '0', name[2] - '0');
    }
    if (name == "const") {
        TestFunction2D f = separable_function("const", constant_function(1.0), monomial(0));
        f.exact_modulus = [](double, double) { return 0.0; };
        f.lipschitz = Lipschitz2D{1.0, 1.0, 1.0};
        f.uniformly_continuous = true;
        return f;
    }
    if (name == "exp_sum") {
        TestFunction2D f = separable_function("exp_sum", exp_decay(), exp_decay());
        f.exact_modulus = [](double d1, double d2) { return -std::expm1(-(d1 + d2)); };
        f.uniformly_continuous = true;
        return f;
    }
    if (name == "sin_exp" || name == "cos_exp") {
        const bool is_sin = name == "sin_exp";
        TestFunction2D f = separable_function(std::string(name), is_sin ? sine() : cosine(),
                                              exp_decay());
        // Largest amplitude sqrt(a^2 + b^2 - 2ab cos d1) of a sin(s + d1) - b sin(s)
        // with a = 1 and b in [e^{-d2}, 1]; convex in b, so an endpoint wins.
        f.exact_modulus = [](double d1, double d2) {
            const double b = std::exp(-d2);
            const double c = std::cos(std::min(d1, std::numbers::pi));
            const double scaled = 1.0 + b * b - 2.0 * b * c;
            const double equal = 2.0 - 2.0 * c;
            return std::sqrt(std::max(0.0, std::max(scaled, equal)));
        };
        f.uniformly_continuous = true;
        return f;
    }
    if (name == "sqrt_prod") {
        TestFunction2D f = separable_function("sqrt_prod", square_root(), square_root());
        f.lipschitz = Lipschitz2D{1.0, 0.5, 0.5};
        return f;
    }
    if (name == "product") {
        TestFunction2D f = separable_function("product", monomial(1), monomial(1));
        // M = sup of the first partials over the default window [0, 4]^2.
        f.lipschitz = Lipschitz2D{4.0, 1.0, 1.0};
        return f;
    }
    if (name == "recip_sum") {
        TestFunction2D f;
        f.name = "recip_sum";
        f.eval = [](double u, double v) { return 1.0 / (1.0 + u + v); };
        f.exact_modulus = [](double d1, double d2) { return (d1 + d2) / (1.0 + d1 + d2); };
        f.growth = Growth2D{1.0, 0.0, 0.0};
        f.uniformly_continuous = true;
        return f;
    }
    throw DomainError("unknown bivariate test function '" + std::string(name) + "'");
}

std::vector<std::string> registry_names_2d() {
    return {"e00",     "e10",     "e01",     "e20",       "e02",     "e11",      "const",
            "exp_sum", "sin_exp", "cos_exp", "sqrt_prod", "product", "recip_sum"};
}

namespace {

void require_points(double x, double y, const char* who) {
    if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError(std::string(who) + ": x and y must be finite and nonnegative");
    }
}

}  // namespace

OperatorValue apply2_double_sum(const TestFunction2D& f, double x, double y,
                                const BivariateParams& bp) {
    require_points(x, y, "apply2_double_sum");
    if (x == 0.0 && y == 0.0) {
        return OperatorValue{f.eval(0.0, 0.0), 1, 0.0};
    }

    double outer_scale = 0.0;  // bound on |inner value| / (1 + u^p)
    if (f.growth) {
        TestFunction vr = monomial(0);
        vr.eval = [r = f.growth->r](double v) { return 1.0 + std::pow(v, r); };
        vr.growth = GrowthBound{1.0, 1.0, f.growth->r};
        const OperatorValue mv = apply(vr, y, bp.py);
        outer_scale = f.growth->A * (mv.value + mv.tail_bound);
    }

    double inner_tail = 0.0;
    std::size_t inner_terms = 0;
    TestFunction outer;
    outer.name = f.name + "|outer";
    outer.eval = [&](double u) {
        TestFunction inner;
        inner.name = f.name + "|inner";
        inner.eval = [&f, u](double v) { return f.eval(u, v); };
        if (f.growth) {
            const double c = f.growth->A * (1.0 + std::pow(u, f.growth->p));
            inner.growth = GrowthBound{c, c, f.growth->r};
        }
        const OperatorValue iv = apply(inner, y, bp.py);
        inner_tail = std::max(inner_tail, iv.tail_bound);
        inner_terms = std::max(inner_terms, iv.terms_used);
        return iv.value;
    };
    if (f.growth) {
        outer.growth = GrowthBound{outer_scale, outer_scale, f.growth->p};
    }
    const OperatorValue ov = apply(outer, x, bp.px);
    // Outer weights sum to one, so the weighted inner errors are at most
    // the largest inner certificate.
    return OperatorValue{ov.value, ov.terms_used * std::max<std::size_t>(inner_terms, 1),
                         ov.tail_bound + inner_tail};
}

OperatorValue apply2(const TestFunction2D& f, double x, double y, const BivariateParams& bp) {
    require_points(x, y, "apply2");
    if (!f.separable) {
        return apply2_double_sum(f, x, y, bp);
    }
    if (x == 0.0 && y == 0.0) {
        return OperatorValue{f.eval(0.0, 0.0), 1, 0.0};
    }
    const OperatorValue a = apply(f.separable->first, x, bp.px);
    const OperatorValue b = apply(f.separable->second, y, bp.py);
    return OperatorValue{a.value * b.value, a.terms_used * b.terms_used,
                         std::fabs(a.value) * b.tail_bound + std::fabs(b.value) * a.tail_bound +
                             a.tail_bound * b.tail_bound};
}

OperatorValue moment2(int i, int j, double x, double y, const BivariateParams& bp) {
    if (i < 0 || i > 2 || j < 0 || j > 2) {
        throw DomainError("moment2: orders must lie in {0, 1, 2}");
    }
    return apply2(monomial2(i, j), x, y, bp);
}

OperatorValue central_moment2(Axis axis, int order, double x, double y, const BivariateParams& bp) {
    if (order != 1 && order != 2) {
        throw DomainError("central_moment2: order must be 1 or 2");
    }
    const double c = axis == Axis::x ? x : y;
    TestFunction g;
    g.name = order == 1 ? "e1-c" : "(e1-c)^2";
    if (order == 1) {
        g.eval = [c](double t) { return t - c; };
        g.growth = GrowthBound{c, 1.0, 1.0};
    } else {
        g.eval = [c](double t) { return (t - c) * (t - c); };
        g.growth = GrowthBound{2.0 * c * c, 2.0, 2.0};
    }
    TestFunction2D f = axis == Axis::x ? separable_function(g.name + "(x)", g, monomial(0))
                                       : separable_function(g.name + "(y)", monomial(0), g);
    return apply2(f, x, y, bp);
}

}  // namespace qdunkl

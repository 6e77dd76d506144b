#pragma once

// Bivariate product-kernel extension D*_{n1,n2} and its moments.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdunkl/operators.hpp"
#include "qdunkl/test_function.hpp"

namespace qdunkl {

struct BivariateParams {
    OperatorParams px;
    OperatorParams py;
};

/// |f(u,v) - f(x,y)| <= M |u-x|^nu1 |v-y|^nu2.
struct Lipschitz2D {
    double M = 1.0;
    double nu1 = 1.0;
    double nu2 = 1.0;
};

/// |f(u,v)| <= A (1 + u^p) (1 + v^r).
struct Growth2D {
    double A = 1.0;
    double p = 0.0;
    double r = 0.0;
};

struct TestFunction2D {
    std::string name;
    std::function<double(double, double)> eval;
    /// f = g (x) h when present.
    std::optional<std::pair<TestFunction, TestFunction>> separable;
    std::optional<Lipschitz2D> lipschitz;
    /// Exact omega~(f; d1, d2) when known.
    std::function<double(double, double)> exact_modulus;
    std::optional<Growth2D> growth;
    bool uniformly_continuous = false;

    double operator()(double u, double v) const { return eval(u, v); }

    /// Checks the separable factorization on a 10x10 grid over [0, 4]^2
    /// (tolerance 1e-12 relative) and basic metadata consistency.
    void validate() const;
};

/// Builds f = g (x) h; growth is derived from the factors' growth bounds.
TestFunction2D separable_function(std::string name, TestFunction g, TestFunction h);

/// e_{i,j}(u,v) = u^i v^j.
TestFunction2D monomial2(int i, int j);

/// Registry: e00, e10, e01, e20, e02, e11, const, exp_sum, sin_exp,
/// cos_exp, sqrt_prod, product.
TestFunction2D make_test_function_2d(std::string_view name);
std::vector<std::string> registry_names_2d();

/// D*_{n1,n2}(f; x, y). Separable f uses the product of univariate
/// applications; everything else goes through the double sum.
OperatorValue apply2(const TestFunction2D& f, double x, double y, const BivariateParams& bp);

/// Always the double sum: outer k1 loop over certified inner k2 sums.
OperatorValue apply2_double_sum(const TestFunction2D& f, double x, double y,
                                const BivariateParams& bp);

/// D*_{n1,n2}(e_{i,j}; x, y), i, j in {0, 1, 2}.
OperatorValue moment2(int i, int j, double x, double y, const BivariateParams& bp);

enum class Axis { x, y };

/// D*_{n1,n2}((e_{1,0} - x)^order) or ((e_{0,1} - y)^order), order in {1, 2}.
OperatorValue central_moment2(Axis axis, int order, double x, double y, const BivariateParams& bp);

}  // namespace qdunkl

#pragma once

// Test functions with the analytic metadata the bound checkers need:
// exact moduli of continuity, Lipschitz data, derivative bounds and a
// growth majorant used for series tail certificates.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdunkl {

/// |f(u) - f(v)| <= M |u - v|^nu on [0, inf).
struct LipschitzData {
    double M = 1.0;
    double nu = 1.0;
};

/// Suprema of |g|, |g'|, |g''| on [0, inf).
struct DerivativeBounds {
    double sup_g = 0.0;
    double sup_d1 = 0.0;
    double sup_d2 = 0.0;

    double c2_norm() const noexcept { return sup_g + sup_d1 + sup_d2; }
};

/// |f(t)| <= constant + coefficient * t^power for t >= 0.
struct GrowthBound {
    double constant = 0.0;
    double coefficient = 0.0;
    double power = 0.0;
};

struct TestFunction {
    std::string name;
    std::function<double(double)> eval;
    /// Exact omega(f, delta) on [0, inf), when known in closed form.
    std::function<double(double)> exact_modulus;
    std::optional<LipschitzData> lipschitz;
    std::optional<DerivativeBounds> derivatives;
    /// Without a growth bound, operators assume the weighted-space
    /// majorant |f(t)| <= C (1 + t^2) with C fitted on the evaluated nodes.
    std::optional<GrowthBound> growth;
    bool bounded = false;
    bool uniformly_continuous = false;
    bool weighted_space_member = false;

    double operator()(double t) const { return eval(t); }

    /// Throws DomainError when the metadata contradicts itself.
    void validate() const;
};

TestFunction monomial(int j);
TestFunction constant_function(double c);
TestFunction affine_function(double a, double b);
TestFunction exp_decay();
TestFunction sine();
TestFunction cosine();
TestFunction square_root();
TestFunction reciprocal_shift();
/// t^nu. For nu <= 1 the modulus is delta^nu; for nu > 1 it is the
/// window-restricted x_max^nu - (x_max - delta)^nu.
TestFunction power_function(double nu, double x_max = 4.0);

/// Lookup by registry name: e0, e1, e2, const, affine, exp_decay, sin, cos,
/// sqrt, reciprocal. Throws DomainError for unknown names.
TestFunction make_test_function(std::string_view name);
std::vector<std::string> registry_names();

/// Pointwise combination a f + b g with combined metadata (growth only).
TestFunction linear_combination(double a, const TestFunction& f, double b, const TestFunction& g);

}  // namespace qdunkl

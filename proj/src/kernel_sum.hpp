#pragma once

// Certified evaluation of normalized positive-kernel operators
//   L(f) = sum_k w_k f(t_k) / sum_k w_k,  w_0 = 1, w_{k+1} = w_k * ratio(k).
//
// A kernel supplies
//   ratio(k)            w_{k+1} / w_k
//   ratio_majorant(k)   an upper bound of ratio(j) for every j >= k
//   node(k)             t_k
//   envelope(k)         {E, G} with t_j <= E * G^(j-k) for every j > k
//
// With |f(t)| <= a + b t^p the dropped tails obey
//   sum_{j>k} w_j           <= w_k R / (1 - R)
//   sum_{j>k} w_j |f(t_j)|  <= a w_k R / (1 - R) + b w_k E^p R' / (1 - R'),  R' = R G^p.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "qdunkl/errors.hpp"
#include "qdunkl/operators.hpp"
#include "qdunkl/series.hpp"
#include "qdunkl/test_function.hpp"

namespace qdunkl::detail {

struct NodeEnvelope {
    double bound = 0.0;
    double growth = 1.0;
};

template <typename Kernel>
OperatorValue sum_kernel(const Kernel& kernel, const TestFunction& f,
                         const TruncationControl& trunc, const char* who) {
    trunc.validate();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int rescale_exponent = 512;
    const double rescale_threshold = std::ldexp(1.0, rescale_exponent);

    CompensatedSum weights;
    CompensatedSum weighted;
    CompensatedSum weighted_abs;
    double term = 1.0;
    double fitted_rho = 0.0;  // max |f(t)| / (1 + t^2) over visited nodes

    for (std::size_t k = 0; k < trunc.max_terms; ++k) {
        const double t = kernel.node(k);
        const double fv = f.eval(t);
        if (!std::isfinite(fv)) {
            throw FunctionDomainError(std::string(who) + ": test function '" + f.name +
                                          "' is not finite at node " + std::to_string(t),
                                      t);
        }
        weights.add(term);
        weighted.add(term * fv);
        weighted_abs.add(term * std::fabs(fv));
        fitted_rho = std::max(fitted_rho, std::fabs(fv) / (1.0 + t * t));

        const double r = kernel.ratio_majorant(k);
        if (k >= 1 && r < 1.0) {
            const GrowthBound g = f.growth ? *f.growth : GrowthBound{fitted_rho, fitted_rho, 2.0};
            const NodeEnvelope env = kernel.envelope(k);
            const double rg = g.coefficient > 0.0 ? r * std::pow(env.growth, g.power) : 0.0;
            if (rg < 1.0) {
                const double s = weights.value();
                const double value = weighted.value() / s;
                const double scale = weighted_abs.value() / s;
                const double tail_w = term * r / (1.0 - r);
                double tail_f = g.constant * tail_w;
                if (g.coefficient > 0.0) {
                    tail_f += g.coefficient * term * std::pow(env.bound, g.power) * rg / (1.0 - rg);
                }
                const double truncation = (tail_f + std::fabs(value) * tail_w) / s;
                if (truncation <= trunc.rel_tol * scale + trunc.abs_tol) {
                    const double rounding =
                        (6.0 * static_cast<double>(k + 1) + 16.0) * eps * (scale + std::fabs(value));
                    return OperatorValue{value, k + 1, truncation + rounding};
                }
            }
        }

        term *= kernel.ratio(k);
        if (term > rescale_threshold) {
            term = std::ldexp(term, -rescale_exponent);
            weights.scale_pow2(-rescale_exponent);
            weighted.scale_pow2(-rescale_exponent);
            weighted_abs.scale_pow2(-rescale_exponent);
        }
    }
    const double s = weights.value();
    throw TruncationError(std::string(who) + ": tail certificate not reached within max_terms",
                          s > 0.0 ? weighted.value() / s : 0.0, trunc.max_terms);
}

}  // namespace qdunkl::detail

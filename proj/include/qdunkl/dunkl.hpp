#pragma once

// q-Dunkl coefficient sequence gamma_{mu,q}, the parity function theta and
// the two q-Dunkl exponentials e_{mu,q}, E_{mu,q}.

#include <cstddef>

#include "qdunkl/qcore.hpp"
#include "qdunkl/series.hpp"

namespace qdunkl {

/// Dunkl weight mu >= 0. Values mu <= 1/2 are accepted but flagged: the
/// q-Dunkl exponentials are usually stated for mu > 1/2, while the
/// classical Dunkl-Szasz setting allows any mu >= 0.
class DunklParam {
public:
    explicit DunklParam(double mu);

    double value() const noexcept { return mu_; }
    bool below_half() const noexcept { return mu_ <= 0.5; }

private:
    double mu_;
};

/// 0 for even k, 1 for odd k.
constexpr int theta(std::size_t k) noexcept { return static_cast<int>(k & 1U); }

/// Exponent 2*mu*theta_k + k appearing in the q-bracket of gamma and the nodes.
inline double dunkl_exponent(std::size_t k, const DunklParam& mu) noexcept {
    return 2.0 * mu.value() * theta(k) + static_cast<double>(k);
}

/// gamma_{mu,q}(k) by the recursion gamma(k) = [2 mu theta_k + k]_q gamma(k-1),
/// gamma(0) = 1. Throws RangeError if the value overflows a double; use
/// log_gamma_mu_q in that regime.
double gamma_mu_q(std::size_t k, const DunklParam& mu, const QParam& q);

/// log gamma_{mu,q}(k), accumulated factor by factor.
double log_gamma_mu_q(std::size_t k, const DunklParam& mu, const QParam& q);

/// Closed form (q^{2mu+1}; q^2)_{ceil(k/2)} (q^2; q^2)_{floor(k/2)} / (1-q)^k.
double gamma_mu_q_explicit(std::size_t k, const DunklParam& mu, const QParam& q);

/// Classical Dunkl gamma: gamma_mu(k) = (k + 2 mu theta_k) gamma_mu(k-1).
double gamma_mu_classical(std::size_t k, const DunklParam& mu);

/// Ratio t_{k+1}/t_k of consecutive terms of E_{mu,q}(x):
/// q^k x / [2 mu theta_{k+1} + k + 1]_q.
double dunkl_E_term_ratio(std::size_t k, double x, const DunklParam& mu, const QParam& q);

/// e_{mu,q}(x) = sum x^k / gamma_{mu,q}(k). Converges only for x (1-q) < 1;
/// outside that region throws DomainError.
SeriesValue dunkl_exp_e(double x, const DunklParam& mu, const QParam& q,
                        const TruncationControl& trunc = {});

/// E_{mu,q}(x) = sum q^{k(k-1)/2} x^k / gamma_{mu,q}(k), entire in x.
SeriesValue dunkl_exp_E(double x, const DunklParam& mu, const QParam& q,
                        const TruncationControl& trunc = {});

}  // namespace qdunkl

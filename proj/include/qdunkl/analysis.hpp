#pragma once

// Moduli of continuity, norms, q_n schedules, Korovkin convergence studies
// and numerical checks of the rate-of-convergence bounds.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdunkl/bivariate.hpp"
#include "qdunkl/operators.hpp"
#include "qdunkl/test_function.hpp"

namespace qdunkl {

/// Uniform grid on [0, x_max]; a finite proxy for suprema over [0, inf).
class Window {
public:
    Window(double x_max, int grid_points);

    double x_max() const noexcept { return x_max_; }
    int grid_points() const noexcept { return points_; }
    double spacing() const noexcept { return x_max_ / (points_ - 1); }
    double point(int i) const noexcept { return i == points_ - 1 ? x_max_ : i * spacing(); }
    std::vector<double> points() const;

private:
    double x_max_;
    int points_;
};

enum class ScheduleKind { one_minus_inverse, ratio };

/// one_minus_inverse: q_n = 1 - 1/(n+1); ratio: q_n = n/(n+1).
QParam q_schedule(ScheduleKind kind, int n);
std::string_view schedule_name(ScheduleKind kind);
ScheduleKind parse_schedule(std::string_view name);

struct ModulusEstimate {
    double value = 0.0;
    /// True when the value is the grid estimate (a lower bound of the true modulus).
    bool approximate = false;
};

/// omega(f, delta): the registry's exact formula when present, otherwise the
/// grid estimate over the window.
ModulusEstimate modulus_of_continuity(const TestFunction& f, double delta, const Window& w);

/// sup |f(y) - f(x)| over grid points with |y - x| <= delta.
double grid_modulus(const TestFunction& f, double delta, const Window& w);

/// omega_2(f, sqrt(delta)) = sup_{0<h<=sqrt(delta)} sup_x |f(x+2h) - 2f(x+h) + f(x)|,
/// estimated with x on the window grid and 64 step sizes h.
double second_modulus(const TestFunction& f, double delta, const Window& w);

/// max |f| over the window grid.
double sup_norm(const TestFunction& f, const Window& w);
/// max |f(x)| / (1 + x^2) over the window grid.
double weighted_norm_rho(const TestFunction& f, const Window& w);

struct KorovkinRow {
    int n = 0;
    double q_n = 0.0;
    double q_n_pow_n = 0.0;
    int target = 0;  // j of e_j
    double sup_error = 0.0;
    double weighted_error = 0.0;
    double certificate = 0.0;  // largest operator tail bound in the row
    bool failed = false;
    std::string error;
};

struct KorovkinConfig {
    Window window{2.0, 65};
    Window weighted_window{32.0, 129};
    TruncationControl trunc{};
};

/// For each n and j in {0,1,2}: sup over the window of |D*(e_j;x) - x^j| and
/// the rho-weighted error over the weighted window. Rows ordered by (n, j);
/// an operator failure marks the row instead of aborting the study.
std::vector<KorovkinRow> korovkin_study(ScheduleKind schedule, const DunklParam& mu,
                                        const std::vector<int>& n_list,
                                        const KorovkinConfig& config = {});

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    /// A printed bound term is negative or the printed form fails where the
    /// proof-consistent form holds.
    bool degenerate = false;
    /// A grid modulus stood in for the exact one.
    bool approximate = false;
    double certificate = 0.0;
    std::optional<double> rhs_literal;
};

/// |D*(f;x) - f(x)| against {1 + sqrt((1-q)[n]x^2 + q^{2(1+mu)}[1+2mu]x)} omega(f; 1/sqrt([n])),
/// with q = q_n from the schedule.
BoundReport moc_bound_check(const TestFunction& f, double x, int n, ScheduleKind schedule,
                            const DunklParam& mu, const Window& w = Window(4.0, 257),
                            const TruncationControl& trunc = {});

/// Same check at an explicit (n, q, mu).
BoundReport moc_bound_check(const TestFunction& f, double x, const OperatorParams& params,
                            const Window& w = Window(4.0, 257));

/// |D*(f;x) - f(x)| against M lambda_n(x)^{nu/2}, lambda_n the central second moment.
BoundReport lipschitz_bound_check(const TestFunction& f, double x, const OperatorParams& params);

/// |D*(g;x) - g(x)| against ((1-q)x + lambda_n/2) ||g||_{C_B^2}; the report also
/// carries the printed ((q-1)x + lambda_n/2) ||g|| form in rhs_literal.
BoundReport cb2_bound_check(const TestFunction& g, double x, const OperatorParams& params);

struct PeetreReport {
    double lhs = 0.0;
    double d = 0.0;  // (2x(q-1) + lambda_n)/4
    double bracket = 0.0;
    double ratio = 0.0;
    bool degenerate = false;  // d < 0
};

/// Diagnostic only: lhs / (omega_2(f; sqrt d) + min(1, d) ||f||).
PeetreReport peetre_report(const TestFunction& f, double x, const OperatorParams& params,
                           const Window& w = Window(4.0, 257));

/// Grid estimate of omega~(f; d1, d2) over window^2.
double grid_modulus_2d(const TestFunction2D& f, double d1, double d2, const Window& w);

/// Product bound omega~(f; 1/sqrt[n1], 1/sqrt[n2]) (1 + sqrt(...x...)) (1 + sqrt(...y...)).
BoundReport bivariate_moc_bound_check(const TestFunction2D& f, double x, double y,
                                      const BivariateParams& bp,
                                      const Window& w = Window(4.0, 33));

/// |D*(f;x,y) - f(x,y)| against M lambda_{n1}(x)^{nu1/2} lambda_{n2}(y)^{nu2/2}.
BoundReport bivariate_lipschitz_bound_check(const TestFunction2D& f, double x, double y,
                                            const BivariateParams& bp);

/// The standard sweep used by the bound checks.
struct Sweep {
    std::vector<int> n_values{4, 8, 16, 32, 64, 128, 256};
    std::vector<ScheduleKind> schedules{ScheduleKind::one_minus_inverse, ScheduleKind::ratio};
    std::vector<double> mu_values{0.6, 1.0, 2.5};
    std::vector<double> x_values{0.0, 1.0, 2.0, 3.0, 4.0};
};

}  // namespace qdunkl

#include "qdunkl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdunkl/errors.hpp"

namespace qdunkl {

Window::Window(double x_max, int grid_points) : x_max_(x_max), points_(grid_points) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw DomainError("Window: x_max must be positive and finite");
    }
    if (grid_points < 16) {
        throw DomainError("Window: at least 16 grid points are required");
    }
}

std::vector<double> Window::points() const {
    std::vector<double> out(static_cast<std::size_t>(points_));
    for (int i = 0; i < points_; ++i) {
        out[static_cast<std::size_t>(i)] = point(i);
    }
    return out;
}

QParam q_schedule(ScheduleKind kind, int n) {
    if (n < 1) {
        throw DomainError("q_schedule: n must be at least 1");
    }
    const double nn = static_cast<double>(n);
    switch (kind) {
        case ScheduleKind::one_minus_inverse:
            return QParam(1.0 - 1.0 / (nn + 1.0));
        case ScheduleKind::ratio:
            return QParam(nn / (nn + 1.0));
    }
    throw DomainError("q_schedule: unknown schedule");
}

std::string_view schedule_name(ScheduleKind kind) {
    return kind == ScheduleKind::ratio ? "ratio" : "one_minus_inverse";
}

ScheduleKind parse_schedule(std::string_view name) {
    if (name == "ratio") return ScheduleKind::ratio;
    if (name == "one_minus_inverse") return ScheduleKind::one_minus_inverse;
    throw DomainError("unknown schedule '" + std::string(name) + "'");
}

double grid_modulus(const TestFunction& f, double delta, const Window& w) {
    if (!(delta > 0.0)) {
        throw DomainError("grid_modulus: delta must be positive");
    }
    const std::vector<double> xs = w.points();
    std::vector<double> fx(xs.size());
    std::transform(xs.begin(), xs.end(), fx.begin(), [&](double t) { return f(t); });
    const auto reach = static_cast<std::size_t>(std::floor(delta / w.spacing() * (1.0 + 1e-12)));
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t last = std::min(xs.size() - 1, i + reach);
        for (std::size_t j = i + 1; j <= last; ++j) {
            best = std::max(best, std::fabs(fx[j] - fx[i]));
        }
    }
    return best;
}

ModulusEstimate modulus_of_continuity(const TestFunction& f, double delta, const Window& w) {
    if (!(delta > 0.0)) {
        throw DomainError("modulus_of_continuity: delta must be positive");
    }
    if (f.exact_modulus) {
        return {f.exact_modulus(delta), false};
    }
    return {grid_modulus(f, delta, w), true};
}

double second_modulus(const TestFunction& f, double delta, const Window& w) {
    if (!(delta > 0.0)) {
        throw DomainError("second_modulus: delta must be positive");
    }
    constexpr int steps = 64;
    const double hmax = std::sqrt(delta);
    double best = 0.0;
    for (int l = 1; l <= steps; ++l) {
        const double h = hmax * l / steps;
        for (int i = 0; i < w.grid_points(); ++i) {
            const double x = w.point(i);
            best = std::max(best, std::fabs(f(x + 2.0 * h) - 2.0 * f(x + h) + f(x)));
        }
    }
    return best;
}

double sup_norm(const TestFunction& f, const Window& w) {
    double best = 0.0;
    for (int i = 0; i < w.grid_points(); ++i) {
        best = std::max(best, std::fabs(f(w.point(i))));
    }
    return best;
}

double weighted_norm_rho(const TestFunction& f, const Window& w) {
    double best = 0.0;
    for (int i = 0; i < w.grid_points(); ++i) {
        const double x = w.point(i);
        best = std::max(best, std::fabs(f(x)) / (1.0 + x * x));
    }
    return best;
}

std::vector<KorovkinRow> korovkin_study(ScheduleKind schedule, const DunklParam& mu,
                                        const std::vector<int>& n_list,
                                        const KorovkinConfig& config) {
    if (n_list.empty()) {
        throw DomainError("korovkin_study: n_list must not be empty");
    }
    if (!std::is_sorted(n_list.begin(), n_list.end())) {
        throw DomainError("korovkin_study: n_list must be ascending");
    }
    std::vector<KorovkinRow> rows;
    for (int n : n_list) {
        const QParam q = q_schedule(schedule, n);
        const OperatorParams params(n, q, mu, config.trunc);
        for (int j = 0; j <= 2; ++j) {
            KorovkinRow row;
            row.n = n;
            row.q_n = q.value();
            row.q_n_pow_n = std::pow(q.value(), n);
            row.target = j;
            try {
                for (int i = 0; i < config.window.grid_points(); ++i) {
                    const double x = config.window.point(i);
                    const OperatorValue v = moment(j, x, params);
                    row.sup_error = std::max(row.sup_error, std::fabs(v.value - std::pow(x, j)));
                    row.certificate = std::max(row.certificate, v.tail_bound);
                }
                for (int i = 0; i < config.weighted_window.grid_points(); ++i) {
                    const double x = config.weighted_window.point(i);
                    const OperatorValue v = moment(j, x, params);
                    row.weighted_error = std::max(
                        row.weighted_error, std::fabs(v.value - std::pow(x, j)) / (1.0 + x * x));
                }
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {

// (1-q)[n]x^2 + q^{2(1+mu)} [1+2mu] x
double rate_radicand(double x, const OperatorParams& p) {
    const QParam& q = p.q;
    const double mu = p.mu.value();
    return q.complement() * p.n_bracket() * x * x +
           q.pow(2.0 * (1.0 + mu)) * q_bracket_real(1.0 + 2.0 * mu, q) * x;
}

void finish(BoundReport& r) {
    r.slack = r.rhs - r.lhs;
    r.holds = r.slack >= -r.certificate;
}

}  // namespace

BoundReport moc_bound_check(const TestFunction& f, double x, int n, ScheduleKind schedule,
                            const DunklParam& mu, const Window& w, const TruncationControl& trunc) {
    if (!f.uniformly_continuous) {
        throw DomainError("moc_bound_check: '" + f.name + "' is not uniformly continuous");
    }
    return moc_bound_check(f, x, OperatorParams(n, q_schedule(schedule, n), mu, trunc), w);
}

BoundReport moc_bound_check(const TestFunction& f, double x, const OperatorParams& params,
                            const Window& w) {
    if (!f.uniformly_continuous) {
        throw DomainError("moc_bound_check: '" + f.name + "' is not uniformly continuous");
    }
    const OperatorValue v = apply(f, x, params);
    const ModulusEstimate omega =
        modulus_of_continuity(f, 1.0 / std::sqrt(params.n_bracket()), w);

    BoundReport r;
    r.lhs = std::fabs(v.value - f(x));
    r.rhs = (1.0 + std::sqrt(rate_radicand(x, params))) * omega.value;
    r.certificate = v.tail_bound;
    r.approximate = omega.approximate;
    finish(r);
    return r;
}

BoundReport lipschitz_bound_check(const TestFunction& f, double x, const OperatorParams& params) {
    if (!f.lipschitz) {
        throw DomainError("lipschitz_bound_check: '" + f.name + "' carries no Lipschitz data");
    }
    const auto [M, nu] = *f.lipschitz;
    const OperatorValue v = apply(f, x, params);
    const OperatorValue lambda = central_moment(2, x, params);
    const double lam = std::max(0.0, lambda.value);

    BoundReport r;
    r.lhs = std::fabs(v.value - f(x));
    r.rhs = M * std::pow(lam, 0.5 * nu);
    r.certificate = v.tail_bound + M * std::pow(lam + lambda.tail_bound, 0.5 * nu) - r.rhs;
    finish(r);
    return r;
}

BoundReport cb2_bound_check(const TestFunction& g, double x, const OperatorParams& params) {
    if (!g.derivatives) {
        throw DomainError("cb2_bound_check: '" + g.name + "' carries no derivative bounds");
    }
    const double norm = g.derivatives->c2_norm();
    const OperatorValue v = apply(g, x, params);
    const OperatorValue lambda = central_moment(2, x, params);
    const double q = params.q.value();

    BoundReport r;
    r.lhs = std::fabs(v.value - g(x));
    r.rhs = ((1.0 - q) * x + 0.5 * lambda.value) * norm;
    r.rhs_literal = ((q - 1.0) * x + 0.5 * lambda.value) * norm;
    r.certificate = v.tail_bound + 0.5 * lambda.tail_bound * norm;
    r.degenerate = *r.rhs_literal < r.lhs;
    finish(r);
    return r;
}

PeetreReport peetre_report(const TestFunction& f, double x, const OperatorParams& params,
                           const Window& w) {
    const OperatorValue v = apply(f, x, params);
    const OperatorValue lambda = central_moment(2, x, params);

    PeetreReport r;
    r.lhs = std::fabs(v.value - f(x));
    r.d = (2.0 * x * (params.q.value() - 1.0) + lambda.value) / 4.0;
    if (r.d < 0.0) {
        r.degenerate = true;
        r.bracket = std::numeric_limits<double>::quiet_NaN();
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    const double omega2 = r.d > 0.0 ? second_modulus(f, r.d, w) : 0.0;
    r.bracket = omega2 + std::min(1.0, r.d) * sup_norm(f, w);
    if (r.bracket > 0.0) {
        r.ratio = r.lhs / r.bracket;
    } else {
        r.ratio = r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return r;
}

double grid_modulus_2d(const TestFunction2D& f, double d1, double d2, const Window& w) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
        throw DomainError("grid_modulus_2d: deltas must be positive");
    }
    const int np = w.grid_points();
    std::vector<double> values(static_cast<std::size_t>(np * np));
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < np; ++j) {
            values[static_cast<std::size_t>(i * np + j)] = f(w.point(i), w.point(j));
        }
    }
    const int r1 = static_cast<int>(std::floor(d1 / w.spacing() * (1.0 + 1e-12)));
    const int r2 = static_cast<int>(std::floor(d2 / w.spacing() * (1.0 + 1e-12)));
    double best = 0.0;
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < np; ++j) {
            const double base = values[static_cast<std::size_t>(i * np + j)];
            for (int a = std::max(0, i - r1); a <= std::min(np - 1, i + r1); ++a) {
                for (int b = std::max(0, j - r2); b <= std::min(np - 1, j + r2); ++b) {
                    best = std::max(best, std::fabs(values[static_cast<std::size_t>(a * np + b)] - base));
                }
            }
        }
    }
    return best;
}

BoundReport bivariate_moc_bound_check(const TestFunction2D& f, double x, double y,
                                      const BivariateParams& bp, const Window& w) {
    if (!f.uniformly_continuous) {
        throw DomainError("bivariate_moc_bound_check: '" + f.name + "' is not uniformly continuous");
    }
    const OperatorValue v = apply2(f, x, y, bp);
    const double d1 = 1.0 / std::sqrt(bp.px.n_bracket());
    const double d2 = 1.0 / std::sqrt(bp.py.n_bracket());

    BoundReport r;
    double omega = 0.0;
    if (f.exact_modulus) {
        omega = f.exact_modulus(d1, d2);
    } else {
        omega = grid_modulus_2d(f, d1, d2, w);
        r.approximate = true;
    }
    r.lhs = std::fabs(v.value - f(x, y));
    r.rhs = omega * (1.0 + std::sqrt(rate_radicand(x, bp.px))) *
            (1.0 + std::sqrt(rate_radicand(y, bp.py)));
    r.certificate = v.tail_bound;
    finish(r);
    return r;
}

BoundReport bivariate_lipschitz_bound_check(const TestFunction2D& f, double x, double y,
                                            const BivariateParams& bp) {
    if (!f.lipschitz) {
        throw DomainError("bivariate_lipschitz_bound_check: '" + f.name +
                          "' carries no Lipschitz data");
    }
    const auto [M, nu1, nu2] = *f.lipschitz;
    const OperatorValue v = apply2(f, x, y, bp);
    const OperatorValue l1 = central_moment2(Axis::x, 2, x, y, bp);
    const OperatorValue l2 = central_moment2(Axis::y, 2, x, y, bp);
    const double a = std::max(0.0, l1.value);
    const double b = std::max(0.0, l2.value);

    BoundReport r;
    r.lhs = std::fabs(v.value - f(x, y));
    r.rhs = M * std::pow(a, 0.5 * nu1) * std::pow(b, 0.5 * nu2);
    r.certificate = v.tail_bound +
                    M * std::pow(a + l1.tail_bound, 0.5 * nu1) * std::pow(b + l2.tail_bound, 0.5 * nu2) -
                    r.rhs;
    finish(r);
    return r;
}

}  // namespace qdunkl

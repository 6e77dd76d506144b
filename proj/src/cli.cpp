#include "qdunkl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdunkl/analysis.hpp"
#include "qdunkl/bivariate.hpp"
#include "qdunkl/errors.hpp"
#include "qdunkl/operators.hpp"
#include "qdunkl/report.hpp"
#include "qdunkl/test_function.hpp"

namespace qdunkl::cli {
namespace {

using report::format_double;

/// Raised for anything a user can fix on the command line.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs a construction step, reporting precondition failures as usage errors.
template <class Make>
auto checked(Make&& make) {
    try {
        return make();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

struct Options {
    std::string op = "dstar";
    std::vector<std::string> functions;
    int n = 10;
    double q = 0.0;
    double mu = 0.0;
    int n2 = 0;
    double q2 = 0.0;
    double mu2 = 0.0;
    std::vector<int> n_list;
    std::string schedule;
    std::vector<double> mu_list;
    std::vector<double> x_list;
    std::vector<double> y_list;
    double x_max = 0.0;
    int points = 0;
    double y_max = 0.0;
    int y_points = 0;
    double weighted_x_max = 32.0;
    int weighted_points = 129;
    std::string theorem;
    std::string out;
    std::string format = "csv";
    std::string plot;
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    std::size_t max_terms = 10000;
    bool strict = false;

    // Set after parsing: which optional flags were given.
    bool has_q = false;
    bool has_n2 = false;
    bool has_q2 = false;
    bool has_mu2 = false;
    bool has_x_max = false;
    bool has_points = false;
    bool has_y_max = false;
    bool has_y_points = false;
};

struct Output {
    explicit Output(report::CsvTable t) : table(std::move(t)) {}

    report::CsvTable table;
    std::optional<report::Plot> plot;
    int status = exit_ok;
    std::string summary;
};

std::string bool_cell(bool b) { return b ? "true" : "false"; }

std::string command_line(const std::vector<std::string>& args) {
    std::string s = "qdunkl";
    for (const auto& a : args) {
        s += ' ';
        const bool quote = a.empty() || a.find_first_of(" \t'\"") != std::string::npos;
        if (!quote) {
            s += a;
            continue;
        }
        s += '\'';
        for (char c : a) {
            if (c == '\'') {
                s += "'\\''";
            } else {
                s += c;
            }
        }
        s += '\'';
    }
    return s;
}

TruncationControl truncation(const Options& o) {
    TruncationControl t{o.rel_tol, o.abs_tol, o.max_terms};
    checked([&] {
        t.validate();
        return 0;
    });
    return t;
}

/// points evenly spaced on [0, x_max], the last one exactly x_max.
std::vector<double> grid(double x_max, int points, const char* flag) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw UsageError(std::string(flag) + " must be finite and positive");
    }
    if (points < 2) {
        throw UsageError("a grid needs at least 2 points");
    }
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        xs[static_cast<std::size_t>(i)] = i == points - 1 ? x_max : x_max * i / (points - 1);
    }
    return xs;
}

std::vector<double> window_points(const Options& o, double x_max, int points) {
    return grid(o.has_x_max ? o.x_max : x_max, o.has_points ? o.points : points, "--x-max");
}

Window modulus_window(const Options& o, double x_max, int points) {
    return checked([&] {
        return Window(o.has_x_max ? o.x_max : x_max, o.has_points ? o.points : points);
    });
}

const std::string& single_function(const Options& o, const char* fallback) {
    static std::string holder;
    if (o.functions.size() > 1) {
        throw UsageError("this command takes a single --f");
    }
    holder = o.functions.empty() ? fallback : o.functions.front();
    return holder;
}

QParam required_q(const Options& o) {
    if (!o.has_q) {
        throw UsageError("--q is required for this operator");
    }
    return checked([&] { return QParam(o.q); });
}

void require_positive_n(int n, const char* flag) {
    if (n < 1) {
        throw UsageError(std::string(flag) + " must be at least 1");
    }
}

// ---------------------------------------------------------------- eval

Output cmd_eval(const Options& o) {
    const TestFunction f = checked([&] { return make_test_function(single_function(o, "e1")); });
    const auto xs = window_points(o, 2.0, 21);
    const TruncationControl trunc = truncation(o);
    require_positive_n(o.n, "--n");
    const DunklParam mu = checked([&] { return DunklParam(o.mu); });

    std::function<OperatorValue(double)> op;
    std::string title;
    if (o.op == "dstar" || o.op == "icoz") {
        const OperatorParams p = checked([&] { return OperatorParams(o.n, required_q(o), mu, trunc); });
        if (o.op == "icoz") {
            if (!(p.n_bracket() * p.q.complement() * xs.back() < 1.0)) {
                throw UsageError("icoz kernel diverges: need (1 - q^n) x < 1 on the whole grid");
            }
            op = [f, p](double x) { return icoz_q_dunkl(f, x, p); };
        } else {
            op = [f, p](double x) { return apply(f, x, p); };
        }
        title = o.op + "(" + f.name + "), n=" + std::to_string(o.n) + ", q=" + format_double(o.q) +
                ", mu=" + format_double(o.mu);
    } else if (o.op == "sucu") {
        op = [f, n = o.n, mu, trunc](double x) { return dunkl_szasz_sucu(f, x, n, mu, trunc); };
        title = "sucu(" + f.name + "), n=" + std::to_string(o.n) + ", mu=" + format_double(o.mu);
    } else {
        op = [f, n = o.n, trunc](double x) { return szasz_classical(f, x, n, trunc); };
        title = "szasz(" + f.name + "), n=" + std::to_string(o.n);
    }

    Output res{report::CsvTable({"x", "value", "terms_used", "tail_bound"})};
    report::Series value{"value", {}, {}};
    report::Series target{f.name, {}, {}};
    for (double x : xs) {
        const OperatorValue v = op(x);
        res.table.add_row({format_double(x), format_double(v.value), std::to_string(v.terms_used),
                           format_double(v.tail_bound)});
        value.xs.push_back(x);
        value.ys.push_back(v.value);
        target.xs.push_back(x);
        target.ys.push_back(f(x));
    }
    res.plot = report::Plot{title, "x", "value", report::Scale::linear, {value, target}};
    return res;
}

// ---------------------------------------------------------------- moments

Output cmd_moments(const Options& o) {
    if (o.op != "dstar") {
        throw UsageError("moments supports only --op dstar");
    }
    const auto xs = window_points(o, 2.0, 21);
    const TruncationControl trunc = truncation(o);
    require_positive_n(o.n, "--n");
    const DunklParam mu = checked([&] { return DunklParam(o.mu); });
    const OperatorParams p = checked([&] { return OperatorParams(o.n, required_q(o), mu, trunc); });

    Output res{report::CsvTable({"x", "m0", "m1", "m2", "c1", "c2", "lo2", "hi2", "clo2", "chi2"})};
    std::vector<report::Series> series{{"m2", {}, {}},  {"lo2", {}, {}},  {"hi2", {}, {}},
                                       {"c2", {}, {}},  {"clo2", {}, {}}, {"chi2", {}, {}}};
    int m2_outside = 0;
    int c2_outside = 0;
    constexpr double endpoint_tol = 1e-9;
    for (double x : xs) {
        const OperatorValue m0 = moment(0, x, p);
        const OperatorValue m1 = moment(1, x, p);
        const OperatorValue m2 = moment(2, x, p);
        const OperatorValue c1 = central_moment(1, x, p);
        const OperatorValue c2 = central_moment(2, x, p);
        const MomentBounds raw = moment_bounds(x, p, MomentKind::raw);
        const MomentBounds cen = moment_bounds(x, p, MomentKind::central);
        const double tol_m = endpoint_tol + m2.tail_bound;
        const double tol_c = endpoint_tol + c2.tail_bound;
        if (m2.value < raw.lower - tol_m || m2.value > raw.upper + tol_m) ++m2_outside;
        if (c2.value < cen.lower - tol_c || c2.value > cen.upper + tol_c) ++c2_outside;
        res.table.add_row({format_double(x), format_double(m0.value), format_double(m1.value),
                           format_double(m2.value), format_double(c1.value),
                           format_double(c2.value), format_double(raw.lower),
                           format_double(raw.upper), format_double(cen.lower),
                           format_double(cen.upper)});
        const double ys[] = {m2.value, raw.lower, raw.upper, c2.value, cen.lower, cen.upper};
        for (std::size_t i = 0; i < series.size(); ++i) {
            series[i].xs.push_back(x);
            series[i].ys.push_back(ys[i]);
        }
    }
    res.table.add_comment("sandwich: rows=" + std::to_string(xs.size()) +
                          " m2_outside=" + std::to_string(m2_outside) +
                          " c2_outside=" + std::to_string(c2_outside));
    if (o.strict && (m2_outside > 0 || c2_outside > 0)) {
        res.status = exit_violation;
    }
    res.plot = report::Plot{"second moments and bounds, n=" + std::to_string(o.n) +
                                ", q=" + format_double(o.q) + ", mu=" + format_double(o.mu),
                            "x", "m2, lo2, hi2, c2, clo2, chi2", report::Scale::linear, series};
    return res;
}

// ---------------------------------------------------------------- converge

std::vector<int> n_values(const Options& o) {
    std::vector<int> ns = o.n_list.empty() ? Sweep{}.n_values : o.n_list;
    for (int n : ns) {
        require_positive_n(n, "--n-list");
    }
    return ns;
}

Output cmd_converge(const Options& o) {
    const ScheduleKind schedule =
        checked([&] { return parse_schedule(o.schedule.empty() ? "ratio" : o.schedule); });
    const DunklParam mu = checked([&] { return DunklParam(o.mu); });
    const std::vector<int> ns = n_values(o);
    if (std::adjacent_find(ns.begin(), ns.end(), std::greater_equal<>()) != ns.end()) {
        throw UsageError("--n-list must be strictly increasing");
    }
    const KorovkinConfig config{modulus_window(o, 2.0, 65),
                                checked([&] { return Window(o.weighted_x_max, o.weighted_points); }),
                                truncation(o)};

    const auto rows = korovkin_study(schedule, mu, ns, config);
    Output res{report::CsvTable({"n", "q_n", "q_n_pow_n", "target", "sup_error", "weighted_error"})};
    std::vector<report::Series> series{{"e0", {}, {}}, {"e1", {}, {}}, {"e2", {}, {}}};
    for (const auto& r : rows) {
        res.table.add_row({std::to_string(r.n), format_double(r.q_n), format_double(r.q_n_pow_n),
                           "e" + std::to_string(r.target), format_double(r.sup_error),
                           format_double(r.weighted_error)});
        if (r.failed) {
            res.status = exit_computation;
            res.table.add_comment("failed: n=" + std::to_string(r.n) + " target=e" +
                                  std::to_string(r.target) + ": " + r.error);
            continue;
        }
        series[static_cast<std::size_t>(r.target)].xs.push_back(r.n);
        series[static_cast<std::size_t>(r.target)].ys.push_back(r.sup_error);
    }
    const bool log = o.plot != "linear";
    if (log) {
        // A target reproduced exactly has zero error and no place on log axes.
        std::erase_if(series, [&](const report::Series& s) {
            return std::any_of(s.ys.begin(), s.ys.end(), [](double v) { return !(v > 0.0); });
        });
    }
    res.plot = report::Plot{"sup error, schedule " + std::string(schedule_name(schedule)) +
                                ", mu=" + format_double(o.mu),
                            "n", "sup_error", log ? report::Scale::log_log : report::Scale::linear,
                            series};
    return res;
}

// ---------------------------------------------------------------- bounds

std::vector<std::string> default_functions(const std::string& theorem) {
    if (theorem == "moc" || theorem == "cb2" || theorem == "peetre") {
        return {"exp_decay", "sin", "cos", "reciprocal"};
    }
    if (theorem == "lipschitz") return {"e1", "sqrt"};
    if (theorem == "moc2") return {"exp_sum", "sin_exp", "recip_sum"};
    return {"sqrt_prod", "product", "const"};
}

struct SweepPoint {
    int n;
    QParam q;
};

/// (n, q) pairs in row order: schedules outermost when no fixed --q is given.
std::vector<std::vector<SweepPoint>> q_blocks(const Options& o, const std::vector<int>& ns) {
    std::vector<std::vector<SweepPoint>> blocks;
    if (o.has_q) {
        const QParam q = required_q(o);
        std::vector<SweepPoint> b;
        for (int n : ns) b.push_back({n, q});
        blocks.push_back(std::move(b));
        return blocks;
    }
    std::vector<ScheduleKind> kinds;
    if (o.schedule.empty() || o.schedule == "both") {
        kinds = Sweep{}.schedules;
    } else {
        kinds.push_back(checked([&] { return parse_schedule(o.schedule); }));
    }
    for (ScheduleKind k : kinds) {
        std::vector<SweepPoint> b;
        for (int n : ns) b.push_back({n, q_schedule(k, n)});
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::vector<double> nonnegative_list(const std::vector<double>& given,
                                     const std::vector<double>& fallback, const char* flag) {
    const auto& v = given.empty() ? fallback : given;
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw UsageError(std::string(flag) + " values must be finite and nonnegative");
        }
    }
    return v;
}

struct Tally {
    int rows = 0;
    int holds = 0;
    int degenerate = 0;
    double max_ratio = 0.0;
};

Output bounds_univariate(const Options& o, const std::vector<std::string>& names,
                         const std::vector<std::vector<SweepPoint>>& blocks,
                         const std::vector<DunklParam>& mus, const std::vector<double>& xs,
                         const TruncationControl& trunc, Tally& tally) {
    const std::string& th = o.theorem;
    std::vector<TestFunction> fs;
    for (const auto& name : names) {
        TestFunction f = checked([&] { return make_test_function(name); });
        if (th == "moc" && !f.uniformly_continuous) {
            throw UsageError("'" + name + "' is not uniformly continuous");
        }
        if (th == "lipschitz" && !f.lipschitz) {
            throw UsageError("'" + name + "' carries no Lipschitz data");
        }
        if (th == "cb2" && !f.derivatives) {
            throw UsageError("'" + name + "' carries no derivative bounds");
        }
        if (th == "peetre" && !f.bounded) {
            throw UsageError("'" + name + "' is not bounded");
        }
        fs.push_back(std::move(f));
    }
    const Window w = modulus_window(o, 4.0, 257);
    const bool peetre = th == "peetre";
    std::vector<std::string> header{"function", "x", "n", "q", "mu", "lhs"};
    if (peetre) {
        header.insert(header.end(), {"d", "bracket", "ratio", "degenerate"});
    } else {
        header.insert(header.end(), {"rhs", "slack", "holds", "degenerate"});
    }
    Output res{report::CsvTable(header)};
    std::vector<report::Series> series;

    for (const auto& f : fs) {
        report::Series s{f.name, {}, {}};
        for (const auto& block : blocks) {
            for (const auto& mu : mus) {
                for (const auto& [n, q] : block) {
                    const OperatorParams p(n, q, mu, trunc);
                    for (double x : xs) {
                        std::vector<std::string> row{f.name, format_double(x), std::to_string(n),
                                                     format_double(q.value()),
                                                     format_double(mu.value())};
                        ++tally.rows;
                        if (peetre) {
                            const PeetreReport r = peetre_report(f, x, p, w);
                            row.insert(row.end(), {format_double(r.lhs), format_double(r.d),
                                                   format_double(r.bracket), format_double(r.ratio),
                                                   bool_cell(r.degenerate)});
                            tally.degenerate += r.degenerate;
                            if (std::isfinite(r.ratio)) {
                                tally.max_ratio = std::max(tally.max_ratio, r.ratio);
                                s.xs.push_back(tally.rows);
                                s.ys.push_back(r.ratio);
                            }
                        } else {
                            const BoundReport r = th == "moc"         ? moc_bound_check(f, x, p, w)
                                                  : th == "lipschitz" ? lipschitz_bound_check(f, x, p)
                                                                      : cb2_bound_check(f, x, p);
                            row.insert(row.end(), {format_double(r.lhs), format_double(r.rhs),
                                                   format_double(r.slack), bool_cell(r.holds),
                                                   bool_cell(r.degenerate)});
                            tally.holds += r.holds;
                            tally.degenerate += r.degenerate;
                            s.xs.push_back(tally.rows);
                            s.ys.push_back(r.slack);
                        }
                        res.table.add_row(std::move(row));
                    }
                }
            }
        }
        series.push_back(std::move(s));
    }
    res.plot = report::Plot{th + " bound check", "row", peetre ? "ratio" : "slack",
                            report::Scale::linear, std::move(series)};
    return res;
}

Output bounds_bivariate(const Options& o, const std::vector<std::string>& names,
                        const std::vector<std::vector<SweepPoint>>& blocks,
                        const std::vector<DunklParam>& mus, const std::vector<double>& xs,
                        const std::vector<double>& ys, const TruncationControl& trunc,
                        Tally& tally) {
    const bool moc = o.theorem == "moc2";
    std::vector<TestFunction2D> fs;
    for (const auto& name : names) {
        TestFunction2D f = checked([&] { return make_test_function_2d(name); });
        if (moc && !f.uniformly_continuous) {
            throw UsageError("'" + name + "' is not uniformly continuous");
        }
        if (!moc && !f.lipschitz) {
            throw UsageError("'" + name + "' carries no Lipschitz data");
        }
        fs.push_back(std::move(f));
    }
    const Window w = modulus_window(o, 4.0, 33);
    Output res{report::CsvTable({"function", "x", "y", "n", "q", "mu", "mu2", "lhs", "rhs", "slack",
                                 "holds", "degenerate"})};
    std::vector<report::Series> series;
    for (const auto& f : fs) {
        report::Series s{f.name, {}, {}};
        for (const auto& block : blocks) {
            for (const auto& mu : mus) {
                for (const auto& [n, q] : block) {
                    const BivariateParams bp{OperatorParams(n, q, mu, trunc),
                                             OperatorParams(n, q, mu, trunc)};
                    for (double x : xs) {
                        for (double y : ys) {
                            const BoundReport r = moc ? bivariate_moc_bound_check(f, x, y, bp, w)
                                                      : bivariate_lipschitz_bound_check(f, x, y, bp);
                            ++tally.rows;
                            tally.holds += r.holds;
                            tally.degenerate += r.degenerate;
                            res.table.add_row({f.name, format_double(x), format_double(y),
                                               std::to_string(n), format_double(q.value()),
                                               format_double(mu.value()), format_double(mu.value()),
                                               format_double(r.lhs), format_double(r.rhs),
                                               format_double(r.slack), bool_cell(r.holds),
                                               bool_cell(r.degenerate)});
                            s.xs.push_back(tally.rows);
                            s.ys.push_back(r.slack);
                        }
                    }
                }
            }
        }
        series.push_back(std::move(s));
    }
    res.plot = report::Plot{o.theorem + " bound check", "row", "slack", report::Scale::linear,
                            std::move(series)};
    return res;
}

Output cmd_bounds(const Options& o) {
    const std::vector<std::string> names =
        o.functions.empty() ? default_functions(o.theorem) : o.functions;
    const std::vector<int> ns = n_values(o);
    const auto blocks = q_blocks(o, ns);
    std::vector<DunklParam> mus;
    for (double m : o.mu_list.empty() ? Sweep{}.mu_values : o.mu_list) {
        mus.push_back(checked([&] { return DunklParam(m); }));
    }
    const Sweep sweep;
    const auto xs = nonnegative_list(o.x_list, sweep.x_values, "--x-list");
    const TruncationControl trunc = truncation(o);
    Tally tally;

    Output res = o.theorem == "moc2" || o.theorem == "lipschitz2"
                     ? bounds_bivariate(o, names, blocks, mus, xs,
                                        nonnegative_list(o.y_list, sweep.x_values, "--y-list"),
                                        trunc, tally)
                     : bounds_univariate(o, names, blocks, mus, xs, trunc, tally);

    if (o.theorem == "peetre") {
        res.summary = "summary: theorem=peetre rows=" + std::to_string(tally.rows) +
                      " degenerate=" + std::to_string(tally.degenerate) +
                      " max_ratio=" + format_double(tally.max_ratio);
    } else {
        const int violations = tally.rows - tally.holds;
        res.summary = "summary: theorem=" + o.theorem + " rows=" + std::to_string(tally.rows) +
                      " holds=" + std::to_string(tally.holds) +
                      " violations=" + std::to_string(violations) +
                      " degenerate=" + std::to_string(tally.degenerate);
        if (o.strict && violations > 0) {
            res.status = exit_violation;
        }
    }
    res.table.add_comment(res.summary);
    return res;
}

// ---------------------------------------------------------------- bivariate

Output cmd_bivariate(const Options& o) {
    const TestFunction2D f =
        checked([&] { return make_test_function_2d(single_function(o, "e00")); });
    const auto xs = window_points(o, 2.0, 5);
    const auto ys = grid(o.has_y_max ? o.y_max : (o.has_x_max ? o.x_max : 2.0),
                         o.has_y_points ? o.y_points : (o.has_points ? o.points : 5), "--y-max");
    const TruncationControl trunc = truncation(o);
    require_positive_n(o.n, "--n");
    const int n2 = o.has_n2 ? o.n2 : o.n;
    require_positive_n(n2, "--n2");
    const QParam q1 = required_q(o);
    const QParam q2 = o.has_q2 ? checked([&] { return QParam(o.q2); }) : q1;
    const DunklParam mu1 = checked([&] { return DunklParam(o.mu); });
    const DunklParam mu2 = o.has_mu2 ? checked([&] { return DunklParam(o.mu2); }) : mu1;
    const BivariateParams bp{OperatorParams(o.n, q1, mu1, trunc), OperatorParams(n2, q2, mu2, trunc)};

    const bool separable = f.separable.has_value();
    std::vector<std::string> header{"x", "y", "value", "tail_bound"};
    if (separable) header.push_back("separability_residual");
    Output res{report::CsvTable(header)};
    std::vector<report::Series> series;
    for (double y : ys) {
        series.push_back({"y=" + format_double(y), {}, {}});
    }
    for (double x : xs) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double y = ys[j];
            const OperatorValue v = apply2(f, x, y, bp);
            std::vector<std::string> row{format_double(x), format_double(y), format_double(v.value),
                                         format_double(v.tail_bound)};
            if (separable) {
                const OperatorValue d = apply2_double_sum(f, x, y, bp);
                row.push_back(format_double(std::fabs(d.value - v.value)));
            }
            res.table.add_row(std::move(row));
            series[j].xs.push_back(x);
            series[j].ys.push_back(v.value);
        }
    }
    res.plot = report::Plot{"bivariate " + f.name, "x", "value", report::Scale::linear,
                            std::move(series)};
    return res;
}

// ---------------------------------------------------------------- plumbing

void add_output_options(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "Output file stem; writes <stem>.csv and/or <stem>.svg");
    sub->add_option("--format", o.format, "csv, svg or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
    sub->add_option("--plot", o.plot, "Plot axes: linear or loglog")
        ->check(CLI::IsMember({"linear", "loglog"}));
    sub->add_option("--rel-tol", o.rel_tol, "Relative truncation tolerance");
    sub->add_option("--abs-tol", o.abs_tol, "Absolute truncation tolerance");
    sub->add_option("--max-terms", o.max_terms, "Series term cap");
    sub->add_flag("--strict", o.strict, "Exit with status 3 when a bound is violated");
}

void add_operator_options(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Operator index n");
    sub->add_option("--q", o.q, "Deformation parameter q in (0, 1)");
    sub->add_option("--mu", o.mu, "Dunkl parameter mu >= 0");
}

void add_window_options(CLI::App* sub, Options& o) {
    sub->add_option("--x-max", o.x_max, "Right end of the window [0, x_max]");
    sub->add_option("--points", o.points, "Number of window grid points");
}

void emit(const Options& o, const Output& res, const std::string& cmdline, std::ostream& out) {
    // Provenance goes first, ahead of any command comments.
    const std::string csv = "# cmd: " + cmdline + "\n" + res.table.str();
    const bool want_csv = o.format != "svg";
    const bool want_svg = o.format != "csv";
    std::string svg;
    if (want_svg) {
        if (!res.plot) {
            throw UsageError("this command has no plot");
        }
        report::Plot plot = *res.plot;
        if (!o.plot.empty()) {
            plot.scale = o.plot == "loglog" ? report::Scale::log_log : report::Scale::linear;
        }
        svg = checked([&] { return report::render_svg(plot); });
    }
    if (o.out.empty()) {
        out << csv;
        return;
    }
    if (want_csv) report::write_file(o.out + ".csv", csv);
    if (want_svg) report::write_file(o.out + ".svg", svg);
}

void validate_output_target(const Options& o) {
    if (o.out.empty()) {
        if (o.format != "csv") {
            throw UsageError("--format " + o.format + " needs --out");
        }
        return;
    }
    const std::filesystem::path parent = std::filesystem::path(o.out).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        throw UsageError("output directory '" + parent.string() + "' does not exist");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dunkl q-parametric Szasz-Mirakjan operators: evaluation, moments, "
                 "convergence studies and bound checks.",
                 "qdunkl"};
    app.require_subcommand(1, 1);
    Options o;
    const std::vector<std::string> names2{"e00",     "e10",       "e01",     "e20",    "e02",
                                          "e11",     "const",     "exp_sum", "sin_exp", "cos_exp",
                                          "sqrt_prod", "product", "recip_sum"};

    auto* eval = app.add_subcommand("eval", "Apply an operator to a test function on a grid");
    eval->add_option("--op", o.op, "dstar, icoz, sucu or szasz")
        ->check(CLI::IsMember({"dstar", "icoz", "sucu", "szasz"}));
    eval->add_option("--f", o.functions, "Test function name");
    add_operator_options(eval, o);
    add_window_options(eval, o);
    add_output_options(eval, o);

    auto* moments = app.add_subcommand("moments", "Moments and second-moment bounds on a grid");
    moments->add_option("--op", o.op, "Operator (dstar only)");
    add_operator_options(moments, o);
    add_window_options(moments, o);
    add_output_options(moments, o);

    auto* converge = app.add_subcommand("converge", "Korovkin study over an n list");
    converge->add_option("--schedule", o.schedule, "ratio or one_minus_inverse");
    converge->add_option("--n-list", o.n_list, "Comma-separated n values")->delimiter(',');
    converge->add_option("--mu", o.mu, "Dunkl parameter mu >= 0");
    add_window_options(converge, o);
    converge->add_option("--weighted-x-max", o.weighted_x_max, "Window for the weighted error");
    converge->add_option("--weighted-points", o.weighted_points, "Grid points of that window");
    add_output_options(converge, o);

    auto* bounds = app.add_subcommand("bounds", "Check a rate bound over a parameter sweep");
    bounds->add_option("--theorem", o.theorem, "moc, lipschitz, cb2, peetre, moc2 or lipschitz2")
        ->required()
        ->check(CLI::IsMember({"moc", "lipschitz", "cb2", "peetre", "moc2", "lipschitz2"}));
    bounds->add_option("--f", o.functions, "Comma-separated test functions")->delimiter(',');
    bounds->add_option("--n-list", o.n_list, "Comma-separated n values")->delimiter(',');
    bounds->add_option("--schedule", o.schedule, "ratio, one_minus_inverse or both");
    bounds->add_option("--q", o.q, "Fixed q instead of a schedule");
    bounds->add_option("--mu-list", o.mu_list, "Comma-separated mu values")->delimiter(',');
    bounds->add_option("--x-list", o.x_list, "Comma-separated evaluation points")->delimiter(',');
    bounds->add_option("--y-list", o.y_list, "Second-coordinate points (bivariate)")->delimiter(',');
    add_window_options(bounds, o);
    add_output_options(bounds, o);

    auto* bivariate = app.add_subcommand("bivariate", "Bivariate operator on an (x, y) grid");
    bivariate->add_option("--f", o.functions, "Bivariate test function")->check(CLI::IsMember(names2));
    add_operator_options(bivariate, o);
    bivariate->add_option("--n2", o.n2, "n for the second coordinate (default --n)");
    bivariate->add_option("--q2", o.q2, "q for the second coordinate (default --q)");
    bivariate->add_option("--mu2", o.mu2, "mu for the second coordinate (default --mu)");
    add_window_options(bivariate, o);
    bivariate->add_option("--y-max", o.y_max, "Right end of the y window (default --x-max)");
    bivariate->add_option("--y-points", o.y_points, "y grid points (default --points)");
    add_output_options(bivariate, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto given = [sub](const char* flag) {
        try {
            return sub->get_option(flag)->count() > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    o.has_q = given("--q");
    o.has_n2 = given("--n2");
    o.has_q2 = given("--q2");
    o.has_mu2 = given("--mu2");
    o.has_x_max = given("--x-max");
    o.has_points = given("--points");
    o.has_y_max = given("--y-max");
    o.has_y_points = given("--y-points");

    const std::string name = sub->get_name();
    try {
        validate_output_target(o);
        Output res = name == "eval"       ? cmd_eval(o)
                     : name == "moments"  ? cmd_moments(o)
                     : name == "converge" ? cmd_converge(o)
                     : name == "bounds"   ? cmd_bounds(o)
                                          : cmd_bivariate(o);
        emit(o, res, command_line(args), out);
        if (!o.out.empty() && !res.summary.empty()) {
            out << res.summary << '\n';
        }
        return res.status;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << '\n';
        return exit_computation;
    }
}

}  // namespace qdunkl::cli

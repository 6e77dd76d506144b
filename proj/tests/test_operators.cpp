#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle.hpp"
#include "qdunkl/errors.hpp"
#include "qdunkl/operators.hpp"

using namespace qdunkl;
using oracle::Real;

namespace {

OperatorParams params(int n, double q, double mu, TruncationControl t = {}) {
    return OperatorParams(n, QParam(q), DunklParam(mu), t);
}

double dstar_ref(const oracle::RealFn& f, double x, int n, double q, double mu) {
    return oracle::to_double(oracle::dstar(f, Real(x), n, Real(q), Real(mu)));
}

}  // namespace

TEST_CASE("OperatorParams rejects n < 1") {
    CHECK_THROWS_AS(params(0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(params(-3, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(params(4, 0.5, 1.0, TruncationControl{1e-12, 0.0, 3}), DomainError);
    CHECK(params(4, 0.5, 1.0).n_bracket() == 1.875);
}

TEST_CASE("node examples") {
    const auto p = params(2, 0.5, 1.0);
    CHECK(node(0, p) == 0.0);
    CHECK(node(1, p) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
    CHECK(node(2, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(node_direct(1, p) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("the two node forms agree and match the oracle") {
    for (double q : {0.3, 0.7, 0.95}) {
        for (double mu : {0.0, 0.6, 2.5}) {
            for (int n : {1, 7, 64}) {
                const auto p = params(n, q, mu);
                for (std::size_t k = 1; k <= 200; ++k) {
                    const double a = node(k, p);
                    const double b = node_direct(k, p);
                    CHECK(std::fabs(a - b) <= 1e-13 * a);
                    if (k % 37 == 1) {
                        const double ref =
                            oracle::to_double(oracle::dstar_node(k, n, Real(q), Real(mu)));
                        CHECK(std::fabs(a - ref) <= 1e-14 * ref);
                    }
                }
            }
        }
    }
}

TEST_CASE("weight examples") {
    const auto p = params(2, 0.5, 1.0);
    CHECK(weight(0, 0.0, p) == 1.0);
    for (std::size_t k = 1; k < 5; ++k) CHECK(weight(k, 0.0, p) == 0.0);
    const double ref = oracle::to_double(oracle::dstar_weight(1, Real(1), 2, Real(0.5), Real(1)));
    // The normalizer is certified to rel_tol, so the weight is too.
    CHECK(std::fabs(weight(1, 1.0, p) - ref) <= (p.trunc.rel_tol + 1e-14) * ref);
    CHECK_THROWS_AS(weight(1, -1.0, p), DomainError);
}

TEST_CASE("weights form a partition of unity") {
    std::mt19937 rng(31);
    for (int i = 0; i < 25; ++i) {
        const double q = std::uniform_real_distribution<double>(0.2, 0.95)(rng);
        const double mu = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const int n = std::uniform_int_distribution<int>(1, 64)(rng);
        const double x = std::uniform_real_distribution<double>(0.0, 6.0)(rng);
        const auto p = params(n, q, mu);
        double total = 0.0;
        for (std::size_t k = 0; k < 4000; ++k) {
            const double w = weight(k, x, p);
            CHECK(w >= 0.0);
            total += w;
            if (k > 10 && w < 1e-20) break;
        }
        const OperatorValue m0 = moment(0, x, p);
        CHECK(std::fabs(total - 1.0) <= p.trunc.rel_tol + 1e-13);
        CHECK(std::fabs(m0.value - 1.0) <= m0.tail_bound);
    }
}

TEST_CASE("apply examples") {
    const auto p = params(10, 0.9, 1.0);
    for (double x : {0.0, 0.3, 2.0, 7.5}) {
        const OperatorValue v = apply(monomial(0), x, p);
        CHECK(std::fabs(v.value - 1.0) <= v.tail_bound);
    }
    const OperatorValue e1 = apply(monomial(1), 2.0, p);
    CHECK(std::fabs(e1.value - 1.8) <= 1e-10);
    CHECK(std::fabs(e1.value - 1.8) <= e1.tail_bound);

    const OperatorValue e2 = apply(monomial(2), 1.0, params(4, 0.5, 1.0));
    const double ref = dstar_ref(oracle::mono(2), 1.0, 4, 0.5, 1.0);
    CHECK(std::fabs(e2.value - ref) <= e2.tail_bound);
    CHECK(ref == doctest::Approx(0.606685).epsilon(1e-6));
}

TEST_CASE("apply at x = 0 returns f(0) exactly") {
    const auto p = params(5, 0.6, 0.6);
    for (const auto& name : registry_names()) {
        const TestFunction f = make_test_function(name);
        const OperatorValue v = apply(f, 0.0, p);
        CHECK(v.value == f(0.0));
        CHECK(v.tail_bound == 0.0);
    }
}

TEST_CASE("apply agrees with the oracle across the registry") {
    const struct {
        const char* name;
        oracle::RealFn ref;
    } cases[] = {{"exp_decay", oracle::exp_decay()}, {"sin", oracle::sine()},
                 {"cos", oracle::cosine()},          {"sqrt", oracle::square_root()},
                 {"reciprocal", oracle::reciprocal_shift()}, {"e2", oracle::mono(2)}};
    for (const auto& c : cases) {
        const TestFunction f = make_test_function(c.name);
        for (double q : {0.3, 0.8, 0.97}) {
            for (double x : {0.25, 1.0, 3.0}) {
                const auto p = params(16, q, 0.6);
                const OperatorValue v = apply(f, x, p);
                const double ref = dstar_ref(c.ref, x, 16, q, 0.6);
                INFO(c.name, " q=", q, " x=", x);
                CHECK(std::fabs(v.value - ref) <= v.tail_bound);
            }
        }
    }
}

TEST_CASE("moment examples") {
    const OperatorValue m0 = moment(0, 3.7, params(7, 0.42, 2.0));
    CHECK(std::fabs(m0.value - 1.0) <= m0.tail_bound);
    CHECK(moment(1, 0.0, params(7, 0.42, 2.0)).value == 0.0);

    const auto p = params(16, 0.8, 0.6);
    const OperatorValue m2 = moment(2, 2.0, p);
    const double ref = dstar_ref(oracle::mono(2), 2.0, 16, 0.8, 0.6);
    CHECK(std::fabs(m2.value - ref) <= m2.tail_bound);
    const MomentBounds b = moment_bounds(2.0, p, MomentKind::raw);
    CHECK(b.lower <= ref);
    CHECK(ref <= b.upper);
    CHECK_THROWS_AS(moment(3, 1.0, p), DomainError);
    CHECK_THROWS_AS(moment(-1, 1.0, p), DomainError);
}

TEST_CASE("first-moment identity on the sweep grid") {
    for (double q : {0.3, 0.7, 0.95}) {
        for (double mu : {0.0, 0.6, 1.0, 2.5}) {
            for (int n = 1; n <= 256; n *= 2) {
                const auto p = params(n, q, mu);
                for (double x = 0.0; x <= 8.0; x += 0.5) {
                    const OperatorValue v = moment(1, x, p);
                    INFO("q=", q, " mu=", mu, " n=", n, " x=", x);
                    CHECK(std::fabs(v.value - q * x) <= v.tail_bound);
                }
            }
        }
    }
}

TEST_CASE("central moment examples") {
    const OperatorValue c1 = central_moment(1, 5.0, params(20, 0.9, 1.0));
    CHECK(std::fabs(c1.value + 0.5) <= 1e-10);
    CHECK(central_moment(2, 0.0, params(4, 0.5, 1.0)).value == 0.0);

    const auto p = params(4, 0.5, 1.0);
    const OperatorValue c2 = central_moment(2, 1.0, p);
    const OperatorValue m1 = moment(1, 1.0, p);
    const OperatorValue m2 = moment(2, 1.0, p);
    CHECK(std::fabs(c2.value - (m2.value - 2.0 * m1.value + 1.0)) <= 1e-10);
    const Real one(1);
    const double ref = oracle::to_double(oracle::dstar(
        [&](const Real& t) { return Real((t - one) * (t - one)); }, one, 4, Real(0.5), one));
    CHECK(std::fabs(c2.value - ref) <= c2.tail_bound);
    CHECK_THROWS_AS(central_moment(0, 1.0, p), DomainError);
    CHECK_THROWS_AS(central_moment(3, 1.0, p), DomainError);
}

TEST_CASE("moment_bounds closed forms") {
    const auto p = params(4, 0.5, 1.0);
    const MomentBounds z = moment_bounds(0.0, p, MomentKind::raw);
    CHECK(z.lower == 0.0);
    CHECK(z.upper == 0.0);
    const MomentBounds raw = moment_bounds(1.0, p, MomentKind::raw);
    const double scale = std::pow(0.5, 4.0) / 1.875;
    CHECK(raw.lower == doctest::Approx(0.5 + scale * -2.0).epsilon(1e-15));
    CHECK(raw.upper == doctest::Approx(0.5 + scale * 1.75).epsilon(1e-15));

    const auto p2 = params(16, 0.9, 0.6);
    const MomentBounds cen = moment_bounds(2.0, p2, MomentKind::central);
    const double s2 = std::pow(0.9, 3.2) / q_integer(16, QParam(0.9));
    CHECK(cen.lower == doctest::Approx(0.1 * 4.0 + s2 * q_bracket_real(-0.2, QParam(0.9)) * 2.0));
    CHECK(cen.upper == doctest::Approx(0.1 * 4.0 + s2 * q_bracket_real(2.2, QParam(0.9)) * 2.0));
}

TEST_CASE("second moment: the lower closed form holds and the upper one can fail") {
    // The exact moments come from the oracle, so any breach of the printed
    // upper bound is a property of the operator, not of the arithmetic.
    int upper_breaches = 0;
    for (double q : {0.3, 0.7, 0.95}) {
        for (double mu : {0.0, 1.0, 2.5}) {
            for (int n : {1, 16, 256}) {
                for (double x : {0.5, 2.0, 8.0}) {
                    const auto p = params(n, q, mu);
                    const OperatorValue m2 = moment(2, x, p);
                    const double ref = dstar_ref(oracle::mono(2), x, n, q, mu);
                    CHECK(std::fabs(m2.value - ref) <= m2.tail_bound);
                    const MomentBounds b = moment_bounds(x, p, MomentKind::raw);
                    CHECK(ref >= b.lower - 1e-12 * std::fabs(b.lower));
                    upper_breaches += ref > b.upper;

                    const OperatorValue c2 = central_moment(2, x, p);
                    CHECK(c2.value >= -c2.tail_bound);
                    const MomentBounds bc = moment_bounds(x, p, MomentKind::central);
                    CHECK(c2.value >= bc.lower - c2.tail_bound - 1e-12 * std::fabs(bc.lower));
                }
            }
        }
    }
    const auto p = params(4, 0.5, 1.0);
    CHECK(dstar_ref(oracle::mono(2), 1.0, 4, 0.5, 1.0) > moment_bounds(1.0, p, MomentKind::raw).upper);
    CHECK(upper_breaches > 0);
}

TEST_CASE("positivity, linearity and monotonicity") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const TestFunction s = make_test_function("sin");
    const TestFunction c = make_test_function("cos");
    const TestFunction e = make_test_function("exp_decay");
    TestFunction sin2 = s;
    sin2.name = "sin^2";
    sin2.eval = [](double t) { return std::sin(t) * std::sin(t); };
    sin2.growth = GrowthBound{1.0, 0.0, 0.0};
    for (int i = 0; i < 40; ++i) {
        const double q = std::uniform_real_distribution<double>(0.2, 0.97)(rng);
        const double mu = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const int n = std::uniform_int_distribution<int>(1, 128)(rng);
        const double x = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
        const auto p = params(n, q, mu);

        const OperatorValue pos = apply(sin2, x, p);
        CHECK(pos.value >= -pos.tail_bound);

        const double a = coef(rng);
        const double b = coef(rng);
        const OperatorValue fs = apply(s, x, p);
        const OperatorValue fc = apply(c, x, p);
        const OperatorValue comb = apply(linear_combination(a, s, b, c), x, p);
        const double cert = comb.tail_bound + std::fabs(a) * fs.tail_bound + std::fabs(b) * fc.tail_bound;
        CHECK(std::fabs(comb.value - a * fs.value - b * fc.value) <= cert);

        // e^{-t} <= 1 = e_0 on every node.
        const OperatorValue fe = apply(e, x, p);
        const OperatorValue one = apply(monomial(0), x, p);
        CHECK(fe.value <= one.value + fe.tail_bound + one.tail_bound);
    }
}

TEST_CASE("functions without a growth bound still get a certificate") {
    TestFunction cube;
    cube.name = "t^3";
    cube.eval = [](double t) { return t * t * t; };
    const auto p = params(8, 0.8, 1.0);
    const OperatorValue v = apply(cube, 1.5, p);
    const double ref = dstar_ref(oracle::mono(3), 1.5, 8, 0.8, 1.0);
    CHECK(v.tail_bound > 0.0);
    CHECK(std::fabs(v.value - ref) <= v.tail_bound);
}

TEST_CASE("operator error paths") {
    const auto p = params(4, 0.5, 1.0);
    CHECK_THROWS_AS(apply(monomial(1), -0.5, p), DomainError);
    CHECK_THROWS_AS(apply(monomial(1), std::numeric_limits<double>::infinity(), p), DomainError);

    TestFunction bad;
    bad.name = "blows up past 1";
    bad.eval = [](double t) { return t > 1.0 ? std::numeric_limits<double>::quiet_NaN() : t; };
    bad.growth = GrowthBound{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(apply(bad, 1.0, p), FunctionDomainError);

    const auto tight = params(64, 0.99, 1.0, TruncationControl{1e-15, 0.0, 8});
    try {
        apply(monomial(2), 4.0, tight);
        FAIL("expected a truncation error");
    } catch (const TruncationError& e) {
        CHECK(e.terms_used() == 8);
        CHECK(std::isfinite(e.partial_sum()));
    }
}

TEST_CASE("classical Szasz operator") {
    const OperatorValue e0 = szasz_classical(monomial(0), 1.0, 5);
    const OperatorValue e1 = szasz_classical(monomial(1), 1.0, 5);
    const OperatorValue e2 = szasz_classical(monomial(2), 1.0, 5);
    CHECK(std::fabs(e0.value - 1.0) <= e0.tail_bound);
    CHECK(std::fabs(e1.value - 1.0) <= e1.tail_bound);
    CHECK(std::fabs(e2.value - 1.2) <= e2.tail_bound);
    const double ref = oracle::to_double(oracle::szasz(oracle::exp_decay(), Real(2.5), 7));
    const OperatorValue v = szasz_classical(exp_decay(), 2.5, 7);
    CHECK(std::fabs(v.value - ref) <= v.tail_bound);
    CHECK_THROWS_AS(szasz_classical(monomial(0), 1.0, 0), DomainError);
}

TEST_CASE("Sucu's Dunkl-Szasz operator") {
    for (double x : {0.0, 0.4, 3.0}) {
        const OperatorValue v = dunkl_szasz_sucu(monomial(0), x, 6, DunklParam(1.3));
        CHECK(std::fabs(v.value - 1.0) <= v.tail_bound);
    }
    const OperatorValue a = dunkl_szasz_sucu(monomial(2), 1.0, 5, DunklParam(0.0));
    const OperatorValue b = szasz_classical(monomial(2), 1.0, 5);
    CHECK(std::fabs(a.value - b.value) <= 1e-10);
    const OperatorValue e1 = dunkl_szasz_sucu(monomial(1), 1.0, 4, DunklParam(1.0));
    const double ref = oracle::to_double(oracle::sucu(oracle::mono(1), Real(1), 4, Real(1)));
    CHECK(std::fabs(e1.value - ref) <= e1.tail_bound);
}

TEST_CASE("Icoz q-Dunkl operator") {
    const auto p = params(4, 0.5, 1.0);
    const OperatorValue e0 = icoz_q_dunkl(monomial(0), 0.2, p);
    CHECK(std::fabs(e0.value - 1.0) <= e0.tail_bound);
    for (double x : {0.05, 0.2, 0.5}) {
        const OperatorValue e1 = icoz_q_dunkl(monomial(1), x, p);
        const double ref = oracle::to_double(oracle::icoz(oracle::mono(1), Real(x), 4, Real(0.5), Real(1)));
        CHECK(std::fabs(e1.value - ref) <= e1.tail_bound);
    }
    for (std::size_t k = 0; k <= 20; ++k) {
        const double expected = std::pow(0.5, static_cast<double>(k) - 2.0) * node(k, p);
        CHECK(std::fabs(icoz_node(k, p) - expected) <= 1e-14 * std::max(1.0, expected));
    }
    // [4]_{0.5} x (1 - 0.5) = (1 - 0.5^4) x must stay below 1.
    CHECK_THROWS_AS(icoz_q_dunkl(monomial(1), 1.2, p), DomainError);
}

TEST_CASE("q -> 1 limit matches Sucu's operator") {
    const DunklParam mu(1.0);
    const LimitConsistency c0 = limit_consistency_check(monomial(0), 1.0, 5, mu);
    CHECK(c0.difference <= c0.dstar.tail_bound + c0.sucu.tail_bound);
    const LimitConsistency c1 = limit_consistency_check(monomial(1), 1.0, 5, mu);
    CHECK(c1.difference < 5e-4);
    const LimitConsistency c2 = limit_consistency_check(monomial(2), 1.0, 5, mu);
    CHECK(c2.difference < 5e-3);
    CHECK(c2.q == 1.0 - 1e-4);
}

TEST_CASE("evaluation is deterministic") {
    const auto p = params(37, 0.93, 0.6);
    const OperatorValue a = apply(reciprocal_shift(), 2.75, p);
    const OperatorValue b = apply(reciprocal_shift(), 2.75, p);
    CHECK(a.value == b.value);
    CHECK(a.tail_bound == b.tail_bound);
    CHECK(a.terms_used == b.terms_used);
}

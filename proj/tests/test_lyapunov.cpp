#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "hfrac/error.hpp"
#include "hfrac/lyapunov.hpp"
#include "hfrac/propsuite.hpp"
#include "hfrac/systems.hpp"
#include "oracles.hpp"

using namespace hfrac;

namespace {

std::vector<double> oracle_op(const std::vector<double>& y, double nu, double h, OperatorKind kind) {
    return kind == OperatorKind::Caputo ? oracle::caputo(y, nu, h) : oracle::rl(y, nu, h);
}

// p y_{n+1}^{p-1} Op[y]_n - Op[y^p]_n from the Grunwald-Letnikov oracle.
std::vector<double> oracle_margins(const std::vector<double>& y, unsigned p, double nu, double h, OperatorKind kind) {
    std::vector<double> yp(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        yp[k] = std::pow(y[k], static_cast<double>(p));
    const auto a = oracle_op(y, nu, h, kind);
    const auto b = oracle_op(yp, nu, h, kind);
    std::vector<double> out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
        out[n] = p * std::pow(y[n + 1], static_cast<double>(p - 1)) * a[n] - b[n];
    return out;
}

SystemDef linear_system(OperatorKind kind, double nu, double lam, std::vector<double> x0) {
    SystemDef s;
    s.name = "linear";
    s.dim = x0.size();
    s.kind = kind;
    s.nu = nu;
    s.x0 = std::move(x0);
    s.rhs = [lam](double, std::span<const double> x) {
        std::vector<double> f(x.begin(), x.end());
        for (double& v : f)
            v *= lam;
        return f;
    };
    return s;
}

} // namespace

// =============================================================================
// Symmetric matrices and Jacobi
// =============================================================================

TEST_CASE("SymmetricMatrix: construction and products") {
    const SymmetricMatrix P{{2.0, -1.0}, {-1.0, 3.0}};
    CHECK(P.dim() == 2);
    CHECK(P(0, 1) == -1.0);
    CHECK(P(1, 0) == -1.0);
    CHECK(P.dense() == std::vector<double>{2, -1, -1, 3});
    const double x[] = {1.0, 2.0};
    const double y[] = {-1.0, 0.5};
    CHECK(P.apply(x) == std::vector<double>{0.0, 5.0});
    CHECK(P.bilinear(x, y) == doctest::Approx(0.0 * -1.0 + 5.0 * 0.5));
    CHECK(P.quadratic(x) == 10.0);
    CHECK(P.inf_norm() == 4.0);
    const double dense[] = {2, -1, -1, 3};
    CHECK(SymmetricMatrix(2, dense) == P);
    const double asym[] = {2, -1, -1.0000001, 3};
    CHECK_THROWS_AS(SymmetricMatrix(2, asym), std::invalid_argument);
    const double bad[] = {2, NAN, NAN, 3};
    CHECK_THROWS_AS(SymmetricMatrix(2, bad), std::invalid_argument);
    CHECK_THROWS_AS((SymmetricMatrix{{1.0, 2.0}, {3.0}}), std::invalid_argument);
    CHECK(SymmetricMatrix::identity(3)(2, 2) == 1.0);
    CHECK(SymmetricMatrix::identity(3)(0, 2) == 0.0);
}

TEST_CASE("jacobi: closed-form cases") {
    const auto I = jacobi_diagonalize(SymmetricMatrix::identity(4));
    CHECK(I.lambda == std::vector<double>{1, 1, 1, 1});
    CHECK(I.orthogonality_error() == 0.0);

    const SymmetricMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
    const auto e = jacobi_diagonalize(ones);
    CHECK(std::abs(e.lambda[0]) <= 1e-15);
    CHECK(e.lambda[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(e.reconstruction_error(ones) <= 1e-15);
    // eigenvector of 0 is (1,-1)/sqrt2 up to sign
    CHECK(std::abs(std::abs(e.B[0]) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(e.B[0] + e.B[2]) <= 1e-15);

    const SymmetricMatrix diag{{3.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 2.0}};
    CHECK(jacobi_diagonalize(diag).lambda == std::vector<double>{-1, 2, 3});
}

TEST_CASE("jacobi: random symmetric matrices") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + trial % 8;
        std::vector<double> A(d * d);
        std::uniform_real_distribution<double> u(-5, 5);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                A[i * d + j] = A[j * d + i] = u(rng);
        const SymmetricMatrix P(d, A);
        const auto e = jacobi_diagonalize(P);
        CHECK(e.orthogonality_error() <= 1e-12);
        CHECK(e.reconstruction_error(P) <= 1e-11 * std::max(1.0, P.inf_norm()));
        CHECK(std::is_sorted(e.lambda.begin(), e.lambda.end()));
        // trace is preserved
        double tr = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            tr += P(i, i);
            sum += e.lambda[i];
        }
        CHECK(std::abs(tr - sum) <= 1e-11 * std::max(1.0, P.inf_norm()));
    }
}

TEST_CASE("classify") {
    CHECK(classify(SymmetricMatrix::identity(3)) == Definiteness::PositiveDefinite);
    CHECK(classify(SymmetricMatrix{{1.0, 1.0}, {1.0, 1.0}}) == Definiteness::PositiveSemidefinite);
    CHECK(classify(SymmetricMatrix{{1.0, 2.0}, {2.0, 1.0}}) == Definiteness::Indefinite);
    CHECK(classify(SymmetricMatrix{{-1.0}}) == Definiteness::Indefinite);
    std::mt19937_64 rng(52);
    for (int i = 0; i < 20; ++i)
        CHECK(classify(random_spd(rng, 2 + i % 3, 1e3)) == Definiteness::PositiveDefinite);
}

TEST_CASE("random_spd: spectrum within [1, cond]") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 30; ++i) {
        const auto P = random_spd(rng, 4, 1e3);
        const auto e = jacobi_diagonalize(P);
        CHECK(e.lambda.front() >= 1.0 - 1e-9);
        CHECK(e.lambda.back() <= 1e3 * (1.0 + 1e-9));
    }
}

// =============================================================================
// Inequality specs and margins
// =============================================================================

TEST_CASE("InequalitySpec: factories and validation") {
    CHECK(InequalitySpec::square(OperatorKind::Caputo).exponent() == 2);
    CHECK(InequalitySpec::odd_power(OperatorKind::Caputo, 5).exponent() == 5);
    CHECK(InequalitySpec::odd_power(OperatorKind::Caputo, 5).nonneg_required);
    CHECK(InequalitySpec::power_of_two(OperatorKind::RiemannLiouville, 3).exponent() == 8);
    CHECK(InequalitySpec::square(OperatorKind::RiemannLiouville).prop == PropId::P3_7);
    CHECK(InequalitySpec::quadratic_form(OperatorKind::RiemannLiouville).prop == PropId::P3_8);
    CHECK(InequalitySpec::odd_power(OperatorKind::RiemannLiouville, 3).prop == PropId::P4_3);
    CHECK(InequalitySpec::power_of_two(OperatorKind::Caputo, 1).prop == PropId::P4_2);
    CHECK_THROWS_AS((void)InequalitySpec::odd_power(OperatorKind::Caputo, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)InequalitySpec::odd_power(OperatorKind::Caputo, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)InequalitySpec::power_of_two(OperatorKind::Caputo, 0), std::invalid_argument);
    InequalitySpec wrong = InequalitySpec::square(OperatorKind::Caputo);
    wrong.kind = OperatorKind::RiemannLiouville;
    CHECK_THROWS_AS(wrong.validate(), std::invalid_argument);
    CHECK(std::string(to_string(PropId::P4_4)) == "P4.4");
}

TEST_CASE("margins: constant input") {
    const auto c = GridFunction::sample(HGrid(0, 1, 12), [](double) { return 0.7; });
    for (double nu : {0.2, 0.5, 1.0})
        for (double m : inequality_margins(InequalitySpec::square(OperatorKind::Caputo), c, nu))
            CHECK(std::abs(m) <= 1e-12);
}

TEST_CASE("margins: agree with the independent oracle") {
    std::mt19937_64 rng(54);
    for (auto kind : {OperatorKind::Caputo, OperatorKind::RiemannLiouville}) {
        for (int trial = 0; trial < 40; ++trial) {
            const double nu = 0.1 * (1 + trial % 10);
            const double h = trial % 2 ? 1.0 : 0.3;
            const auto y = oracle::random_scalar(rng, 20, -1, 1, 0, h);
            const auto yn = oracle::random_scalar(rng, 20, 0, 1, 0, h);
            struct Case {
                InequalitySpec spec;
                const GridFunction* y;
            };
            const Case cases[] = {{InequalitySpec::square(kind), &y},
                                  {InequalitySpec::odd_power(kind, 3), &yn},
                                  {InequalitySpec::odd_power(kind, 5), &yn},
                                  {InequalitySpec::power_of_two(kind, 2), &y}};
            for (const auto& c : cases) {
                const auto got = inequality_margins(c.spec, *c.y, nu);
                const auto want = oracle_margins(c.y->values(), c.spec.exponent(), nu, h, kind);
                REQUIRE(got.size() == want.size());
                for (std::size_t n = 0; n < got.size(); ++n) {
                    CHECK(oracle::close(got[n], want[n], 1e-9, 1e-11));
                    CHECK(got[n] == inequality_margin(c.spec, *c.y, nu, n));
                }
            }
        }
    }
}

TEST_CASE("margins: inequalities hold on random inputs") {
    std::mt19937_64 rng(55);
    for (auto kind : {OperatorKind::Caputo, OperatorKind::RiemannLiouville}) {
        for (int trial = 0; trial < 100; ++trial) {
            const double nu = 0.1 * (1 + trial % 10);
            const auto y = oracle::random_scalar(rng, 32);
            for (double m : inequality_margins(InequalitySpec::square(kind), y, nu))
                CHECK(m >= -1e-10);
        }
    }
}

TEST_CASE("margins: order one reduces to a squared step") {
    std::mt19937_64 rng(56);
    const double h = 0.5;
    const auto y = oracle::random_scalar(rng, 10, -1, 1, 0, h);
    const auto m = inequality_margins(InequalitySpec::square(OperatorKind::Caputo), y, 1.0);
    for (std::size_t n = 0; n < m.size(); ++n) {
        const double d = y(n + 1) - y(n);
        CHECK(std::abs(m[n] - d * d / h) <= 1e-13);
    }
    const SymmetricMatrix P{{2.0, 0.5}, {0.5, 1.0}};
    const GridFunction v(HGrid(0, h, 6), 2, oracle::uniform(rng, 12, -1, 1));
    const auto q = quadratic_form_margins(v, P, 1.0, OperatorKind::Caputo);
    for (std::size_t n = 0; n < q.size(); ++n) {
        const double d[] = {v(n + 1, 0) - v(n, 0), v(n + 1, 1) - v(n, 1)};
        CHECK(std::abs(q[n] - P.quadratic(d) / (2.0 * h)) <= 1e-13);
    }
}

TEST_CASE("quadratic form with P = I is half the sum of scalar margins") {
    std::mt19937_64 rng(57);
    for (auto kind : {OperatorKind::Caputo, OperatorKind::RiemannLiouville}) {
        const GridFunction v(HGrid(0, 1, 16), 3, oracle::uniform(rng, 48, -1, 1));
        const auto q = quadratic_form_margins(v, SymmetricMatrix::identity(3), 0.4, kind);
        std::vector<double> sum(q.size(), 0.0);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto m = inequality_margins(InequalitySpec::square(kind),
                                              GridFunction::scalar(v.grid(), v.component(i)), 0.4);
            for (std::size_t n = 0; n < m.size(); ++n)
                sum[n] += 0.5 * m[n];
        }
        for (std::size_t n = 0; n < q.size(); ++n) {
            CHECK(std::abs(q[n] - sum[n]) <= 1e-12);
            CHECK(q[n] == quadratic_form_margin(v, SymmetricMatrix::identity(3), 0.4, kind, n));
        }
    }
}

TEST_CASE("margins: argument checks") {
    const auto neg = GridFunction::scalar(HGrid(0, 1, 4), {0.1, -0.2, 0.3, 0.4});
    CHECK_THROWS_AS((void)inequality_margins(InequalitySpec::odd_power(OperatorKind::Caputo, 3), neg, 0.5),
                    NonnegativityViolation);
    CHECK_NOTHROW((void)inequality_margins(InequalitySpec::power_of_two(OperatorKind::Caputo, 1), neg, 0.5));
    CHECK_THROWS_AS((void)inequality_margin(InequalitySpec::square(OperatorKind::Caputo), neg, 0.5, 3),
                    std::out_of_range);
    CHECK_THROWS_AS((void)inequality_margins(InequalitySpec::quadratic_form(OperatorKind::Caputo), neg, 0.5),
                    std::invalid_argument);
    const GridFunction v(HGrid(0, 1, 3), 2, {1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS((void)quadratic_form_margins(v, SymmetricMatrix{{1.0, 2.0}, {2.0, 1.0}}, 0.5,
                                                 OperatorKind::Caputo),
                    NotPositiveDefinite);
    CHECK_THROWS_AS((void)quadratic_form_margins(v, SymmetricMatrix::identity(3), 0.5, OperatorKind::Caputo),
                    std::invalid_argument);
}

TEST_CASE("run_property_suite: every row passes") {
    PropSuiteConfig cfg;
    cfg.trials = 40;
    const auto rows = run_property_suite(cfg);
    CHECK(rows.size() == 20);
    for (const auto& r : rows) {
        CAPTURE(to_string(r.prop));
        CAPTURE(r.parameter);
        CHECK(r.passed);
        CHECK(r.worst_margin >= -1e-10);
        CHECK(r.evaluations > 0);
    }
    std::ostringstream a, b;
    write_suite_csv(a, rows);
    write_suite_csv(b, run_property_suite(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("prop,parameter,evaluations,worst_margin,passed\n", 0) == 0);
    cfg.trials = 0;
    CHECK_THROWS_AS((void)run_property_suite(cfg), std::invalid_argument);
}

// =============================================================================
// Certification
// =============================================================================

TEST_CASE("lattice_point: deterministic, in the unit cube, no origin") {
    // sample k is Halton point k + 1
    const auto p0 = lattice_point(0, 2, 0);
    CHECK(p0[0] == 0.5);
    CHECK(p0[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto p1 = lattice_point(1, 3, 0);
    CHECK(p1[0] == 0.25);
    CHECK(p1[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p1[2] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(lattice_point(7, 2, 9) == lattice_point(7, 2, 9));
    CHECK(lattice_point(7, 2, 9) != lattice_point(7, 2, 10));
    for (std::size_t k = 0; k < 500; ++k)
        for (double v : lattice_point(k, 4, 3)) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
}

TEST_CASE("certify: the four examples are stable-certified") {
    for (const auto& id : builtin_ids()) {
        const auto ex = builtin(id);
        const auto r = certify_theorem(ex.system, ex.theorem);
        CAPTURE(id);
        CAPTURE(r.note);
        CHECK(r.verdict == Verdict::StableCertified);
        CHECK(r.sample_count == 10000);
        CHECK(r.worst_margin <= 1e-10);
        CHECK(r.zero_equilibrium);
        CHECK(r.kind_matches);
    }
    const auto r51 = certify_theorem(builtin("ex5.1").system, builtin("ex5.1").theorem);
    CHECK(r51.definiteness == Definiteness::PositiveSemidefinite);
}

TEST_CASE("certify: conditions that cannot certify") {
    auto grow = linear_system(OperatorKind::Caputo, 0.5, 1.0, {0.1, 0.2});
    const auto ti = TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(2));
    const auto r = certify_theorem(grow, ti);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.worst_margin > 0.0);

    const auto ex = builtin("ex5.1");
    const auto mismatch = certify_theorem(ex.system, TheoremSpec::quadratic(TheoremId::T3_2, SymmetricMatrix::identity(2)));
    CHECK(mismatch.verdict == Verdict::Inconclusive);
    CHECK_FALSE(mismatch.kind_matches);

    auto offset = ex.system;
    offset.rhs = [](double, std::span<const double> x) { return std::vector<double>{1.0 - x[0], -x[1]}; };
    const auto off = certify_theorem(offset, ti);
    CHECK(off.verdict == Verdict::Inconclusive);
    CHECK_FALSE(off.zero_equilibrium);

    const auto indef = certify_theorem(ex.system, TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix{{1.0, 2.0}, {2.0, 1.0}}));
    CHECK(indef.verdict == Verdict::Inconclusive);
    CHECK(indef.definiteness == Definiteness::Indefinite);

    const auto wrong_dim = certify_theorem(ex.system, TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(3)));
    CHECK(wrong_dim.verdict == Verdict::Inconclusive);
    CHECK_FALSE(wrong_dim.note.empty());

    auto nan_rhs = ex.system;
    nan_rhs.rhs = [](double, std::span<const double> x) {
        return std::vector<double>{x[0] > 0.5 ? NAN : -x[0], -x[1]};
    };
    CHECK(certify_theorem(nan_rhs, ti).verdict == Verdict::Inconclusive);
}

TEST_CASE("certify: asymptotic verdict needs strict decrease and a decaying run") {
    Sampler s;
    s.count = 500;
    const auto lin = linear_system(OperatorKind::Caputo, 1.0, -1.0, {0.3, -0.2});
    const auto r = certify_theorem(lin, TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(2)), s);
    CHECK(r.verdict == Verdict::AsymptoticallyStableCertified);
    CHECK(r.strict_at_nonzero);
    REQUIRE(r.confirm_ratio.has_value());
    CHECK(*r.confirm_ratio < 1e-2);

    // x^T f = 0 everywhere: stable but never strict
    auto rot = lin;
    rot.rhs = [](double, std::span<const double> x) { return std::vector<double>{-x[1], x[0]}; };
    const auto q = certify_theorem(rot, TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(2)), s);
    CHECK(q.verdict == Verdict::StableCertified);
    CHECK_FALSE(q.strict_at_nonzero);
}

TEST_CASE("certify: seeded lattices") {
    const auto ex = builtin("ex5.2");
    Sampler s;
    s.count = 300;
    s.seed = 17;
    const auto a = certify_theorem(ex.system, ex.theorem, s);
    const auto b = certify_theorem(ex.system, ex.theorem, s);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.worst_point == b.worst_point);
    s.seed = 18;
    const auto c = certify_theorem(ex.system, ex.theorem, s);
    CHECK(c.samples.front().x != a.samples.front().x);
    CHECK(a.samples.size() == 300);
    for (const auto& rec : a.samples)
        for (double v : rec.x) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("certify: odd-power family samples the nonnegative orthant") {
    const auto ex = builtin("ex5.3");
    Sampler s;
    s.count = 400;
    s.radius = 2.0;
    const auto r = certify_theorem(ex.system, ex.theorem, s);
    for (const auto& rec : r.samples)
        for (double v : rec.x) {
            CHECK(v >= 0.0);
            CHECK(v <= 2.0);
        }
    CHECK(r.verdict == Verdict::StableCertified);
}

TEST_CASE("certify: time-dependent systems sample drive times") {
    auto sys = linear_system(OperatorKind::Caputo, 0.5, -1.0, {0.1});
    sys.rhs = [](double t, std::span<const double> x) { return std::vector<double>{-(1.0 + t) * x[0]}; };
    sys.time_dependent = true;
    Sampler s;
    s.count = 50;
    s.t_points = 4;
    const auto r = certify_theorem(sys, TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(1)), s);
    CHECK(r.time_dependent);
    CHECK(r.samples.size() == 200);
    std::ostringstream os;
    write_report_csv(os, r);
    CHECK(os.str().rfind("t,x1,margin\n", 0) == 0);
}

TEST_CASE("TheoremSpec: labels and validation") {
    CHECK(TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix::identity(2)).label() == "T3.1");
    CHECK(TheoremSpec::odd_power(TheoremId::T4_1, 3).label() == "T4.1(i) l=3");
    CHECK(TheoremSpec::power_of_two(TheoremId::T4_2, 2).label() == "T4.2(ii) m=2");
    CHECK_THROWS_AS((void)TheoremSpec::odd_power(TheoremId::T4_1, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)TheoremSpec::odd_power(TheoremId::T3_1, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)TheoremSpec::quadratic(TheoremId::T4_1, SymmetricMatrix::identity(2)), std::invalid_argument);
    CHECK(theorem_kind(TheoremId::T4_2) == OperatorKind::RiemannLiouville);
    CHECK(theorem_kind(TheoremId::T3_1) == OperatorKind::Caputo);
}

TEST_CASE("write_report: key=value block") {
    const auto ex = builtin("ex5.1");
    Sampler s;
    s.count = 10;
    std::ostringstream os;
    write_report(os, certify_theorem(ex.system, ex.theorem, s));
    const auto text = os.str();
    CHECK(text.find("system=ex5.1\n") != std::string::npos);
    CHECK(text.find("theorem=T3.1\n") != std::string::npos);
    CHECK(text.find("evidence=sampled (non-exhaustive)\n") != std::string::npos);
    CHECK(text.find("verdict=stable-certified\n") != std::string::npos);
    CHECK(text.find("definiteness=positive-semidefinite\n") != std::string::npos);
}

// =============================================================================
// Decay reports
// =============================================================================

TEST_CASE("LyapunovCandidate: values") {
    const double x[] = {0.5, -1.0};
    CHECK(LyapunovCandidate::quadratic()(x) == 0.625);
    CHECK(LyapunovCandidate::quadratic(SymmetricMatrix{{1.0, 1.0}, {1.0, 1.0}})(x) == 0.125);
    CHECK(LyapunovCandidate::power_sum(4)(x) == doctest::Approx((0.0625 + 1.0) / 4.0));
    CHECK_FALSE(LyapunovCandidate::power_sum(3).label().empty());
}

TEST_CASE("decay_report: examples are bounded and decaying") {
    for (const auto& id : builtin_ids()) {
        const auto ex = builtin(id);
        const auto rep = decay_report(solve(ex.system, 40), ex.candidate);
        CAPTURE(id);
        CHECK(rep.bounded_by_initial);
        CHECK(rep.decayed);
        CHECK(rep.V.size() == 41);
        for (double v : rep.V)
            CHECK(v <= rep.V.front() + 1e-10);
        CHECK(rep.final_norm < rep.initial_norm);
        CHECK(rep.initial_norm == doctest::Approx(std::hypot(ex.system.x0[0], ex.system.x0[1])));
    }
}

TEST_CASE("decay_report: growth and zero trajectories") {
    const auto grow = solve(linear_system(OperatorKind::Caputo, 0.5, 0.2, {0.1}), 10);
    const auto g = decay_report(grow);
    CHECK_FALSE(g.bounded_by_initial);
    CHECK_FALSE(g.decayed);
    CHECK(g.sup_norm > g.initial_norm);

    const auto zero = solve(linear_system(OperatorKind::Caputo, 0.5, -1.0, {0.0}), 5);
    const auto z = decay_report(zero);
    CHECK(z.bounded_by_initial);
    CHECK_FALSE(z.decayed);
    for (double r : z.ratios)
        CHECK(r == 0.0);

    std::ostringstream os;
    write_decay_summary(os, g);
    CHECK_FALSE(os.str().empty());
}

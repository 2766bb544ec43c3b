#include "fbsplit/linesearch.hpp"

#include "fbsplit/prox.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace fbsplit;

namespace {

Vector vec1(double v) { return Vector::Constant(1, v); }

// Acceptance inequality of the curvature rule, recomputed from the oracles.
bool ls1_accepts(const CompositeProblem& p, const Vector& x, double alpha, double delta) {
    const Vector J = forward_backward(p, x, alpha);
    const Vector gJ = p.smooth.gradient(J);
    const Vector gx = p.smooth.gradient(x);
    return !(alpha * stable_norm(gJ - gx) > delta * stable_norm(J - x));
}

// Acceptance inequality of the segment rule, recomputed from the oracles.
bool ls2_accepts(const CompositeProblem& p, const Vector& x, double beta) {
    const Vector gx = p.smooth.gradient(x);
    const Vector Jx = p.nonsmooth.prox(1.0, x - gx);
    const Vector d = x - Jx;
    const double rhs = objective_value(p, x) -
                       beta * (p.nonsmooth.value(x).value() - p.nonsmooth.value(Jx).value()) -
                       beta * gx.dot(d) + 0.5 * beta * d.squaredNorm();
    const ExtReal lhs = objective(p, x - beta * d);
    return lhs.is_finite() && lhs.value() <= rhs;
}

}  // namespace

TEST_CASE("curvature linesearch on the unit quadratic") {
    // Condition reduces to alpha <= delta; trials 1 and 0.5 fail, 0.25 passes.
    const CompositeProblem p = fbtest::half_square();
    LinesearchParams params;  // sigma=1, theta=0.5, delta=0.4
    const LinesearchOutcome out = linesearch1(p, vec1(1.0), params, params.sigma);
    CHECK(out.stepsize == doctest::Approx(0.25));
    CHECK(out.trials == 2);
    CHECK(out.accepted_point[0] == doctest::Approx(0.75));

    const auto replay = fbtest::replay_ls1(p, vec1(1.0), 1.0, 0.5, 0.4);
    CHECK(out.stepsize == replay.stepsize);
    CHECK(out.trials == replay.trials);
}

TEST_CASE("curvature linesearch zero-residual branch") {
    const CompositeProblem p = fbtest::lasso_1d();
    const LinesearchOutcome out = linesearch1(p, *p.known_solution, LinesearchParams{}, 7.0);
    CHECK(out.stepsize == 7.0);
    CHECK(out.trials == 0);
    CHECK(out.prox_calls == 1);
    CHECK(out.grad_calls == 1);
}

TEST_CASE("curvature linesearch on the p-power problem near the solution") {
    // Accepted stepsize obeys alpha <= (delta/p) * x^{1-p}; exact trial count
    // comes from the brute-force replay of the backtracking loop.
    const CompositeProblem p = fbtest::ppower(0.5);
    LinesearchParams params;
    const Vector x = vec1(0.01);
    const LinesearchOutcome out = linesearch1(p, x, params, params.sigma);
    CHECK(out.stepsize <= 0.4 / 0.5 * std::pow(0.01, 0.5) + 1e-15);  // 0.08

    const auto replay = fbtest::replay_ls1(p, x, 1.0, 0.5, 0.4);
    CHECK(out.stepsize == replay.stepsize);
    CHECK(out.trials == replay.trials);
    CHECK(out.stepsize == doctest::Approx(0.0625));
    CHECK(out.trials == 4);
}

TEST_CASE("segment linesearch on the unit quadratic accepts the full step") {
    const CompositeProblem p = fbtest::half_square();
    LinesearchParams params;
    const LinesearchOutcome out = linesearch2(p, vec1(1.0), params);
    CHECK(out.stepsize == 1.0);
    CHECK(out.trials == 0);
    CHECK(out.prox_calls == 1);
    CHECK(out.accepted_point[0] == doctest::Approx(0.0));
}

TEST_CASE("segment linesearch zero-residual branch") {
    const CompositeProblem p = fbtest::lasso_1d();
    const LinesearchOutcome out = linesearch2(p, *p.known_solution, LinesearchParams{});
    CHECK(out.stepsize == 1.0);
    CHECK(out.trials == 0);
    CHECK(out.prox_calls == 1);
    CHECK(out.f_calls == 0);
}

TEST_CASE("segment linesearch on the quartic matches the loop replay") {
    // f = x^4/4 has no globally Lipschitz gradient; the search still stops
    // after finitely many steps, and the output is the first accepted trial.
    const CompositeProblem p = fbtest::quartic();
    LinesearchParams params;
    const Vector x = vec1(2.0);
    const LinesearchOutcome out = linesearch2(p, x, params);
    const auto replay = fbtest::replay_ls2(p, x, params.theta);
    CHECK(out.stepsize == replay.stepsize);
    CHECK(out.trials == replay.trials);
    CHECK(out.trials >= 1);
    CHECK(ls2_accepts(p, x, out.stepsize));
    CHECK_FALSE(ls2_accepts(p, x, out.stepsize / params.theta));
}

TEST_CASE("descent-lemma linesearch") {
    const CompositeProblem p = fbtest::half_square();
    LinesearchParams params;
    SUBCASE("unit quadratic accepts sigma via the tie rule") {
        // At alpha = 1 = 1/L the sufficient-decrease inequality holds with
        // equality, and ties accept.
        const LinesearchOutcome out = linesearch_descent_lemma(p, vec1(1.0), params);
        CHECK(out.stepsize == 1.0);
        CHECK(out.trials == 0);
    }
    SUBCASE("zero residual returns sigma") {
        const LinesearchOutcome out = linesearch_descent_lemma(p, vec1(0.0), params);
        CHECK(out.stepsize == params.sigma);
        CHECK(out.trials == 0);
    }
    SUBCASE("quartic matches the loop replay") {
        const CompositeProblem q = fbtest::quartic();
        const LinesearchOutcome out = linesearch_descent_lemma(q, vec1(2.0), params);
        const auto replay = fbtest::replay_descent_lemma(q, vec1(2.0), 1.0, 0.5);
        CHECK(out.stepsize == replay.stepsize);
        CHECK(out.trials == replay.trials);
    }
}

TEST_CASE("accepted stepsizes are the first passing trial") {
    std::mt19937_64 rng(41);
    const CompositeProblem problems[] = {fbtest::half_square(), fbtest::lasso_1d(),
                                         fbtest::ppower(0.5, 2), fbtest::quartic()};
    LinesearchParams params;
    for (const auto& p : problems) {
        for (int i = 0; i < 25; ++i) {
            const Vector x = fbtest::random_in_domain(p, rng);
            if (residual(p, x, params.sigma) <= 1e-12) continue;

            const LinesearchOutcome o1 = linesearch1(p, x, params, params.sigma);
            CHECK(o1.stepsize == params.sigma * std::pow(params.theta, o1.trials));
            CHECK(ls1_accepts(p, x, o1.stepsize, params.delta));
            if (o1.trials >= 1) CHECK_FALSE(ls1_accepts(p, x, o1.stepsize / params.theta, params.delta));

            const LinesearchOutcome o2 = linesearch2(p, x, params);
            CHECK(ls2_accepts(p, x, o2.stepsize));
            if (o2.trials >= 1) CHECK_FALSE(ls2_accepts(p, x, o2.stepsize / params.theta));
        }
    }
}

TEST_CASE("warm-started curvature searches obey the same acceptance law") {
    // The accelerated driver seeds each search with the previous accepted
    // stepsize instead of sigma.
    std::mt19937_64 rng(59);
    const CompositeProblem p = fbtest::quartic();
    LinesearchParams params;
    for (double initial : {0.3, 0.015, 2.5}) {
        for (int i = 0; i < 10; ++i) {
            const Vector x = fbtest::random_in_domain(p, rng);
            if (residual(p, x, initial) <= 1e-12) continue;
            const LinesearchOutcome out = linesearch1(p, x, params, initial);
            CHECK(out.stepsize == initial * std::pow(params.theta, out.trials));
            CHECK(ls1_accepts(p, x, out.stepsize, params.delta));
            if (out.trials >= 1) {
                CHECK_FALSE(ls1_accepts(p, x, out.stepsize / params.theta, params.delta));
            }
            const auto replay = fbtest::replay_ls1(p, x, initial, params.theta, params.delta);
            CHECK(out.stepsize == replay.stepsize);
        }
    }

    SUBCASE("invalid initial stepsizes are rejected") {
        CHECK_THROWS_AS(linesearch1(p, Vector::Ones(1), params, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(linesearch1(p, Vector::Ones(1), params, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(
            linesearch1(p, Vector::Ones(1), params, std::numeric_limits<double>::quiet_NaN()),
            std::invalid_argument);
    }
}

TEST_CASE("finite termination on catalog problems") {
    std::mt19937_64 rng(43);
    LinesearchParams params;  // max_backtracks = 60
    const CompositeProblem problems[] = {fbtest::half_square(), fbtest::lasso_1d(),
                                         fbtest::ppower(0.5, 2), fbtest::quartic()};
    for (const auto& p : problems) {
        for (int i = 0; i < 100; ++i) {
            const Vector x = fbtest::random_in_domain(p, rng);
            CHECK(linesearch1(p, x, params, params.sigma).trials < params.max_backtracks);
            CHECK(linesearch2(p, x, params).trials < params.max_backtracks);
            CHECK(linesearch_descent_lemma(p, x, params).trials < params.max_backtracks);
        }
    }
}

TEST_CASE("stepsize floors under a global Lipschitz gradient") {
    std::mt19937_64 rng(47);
    LinesearchParams params;

    ProblemSpec spec;
    spec.family = ProblemFamily::StronglyConvexQuadratic;
    spec.dimension = 5;
    spec.quad_min = 1.0;
    spec.quad_max = 8.0;
    spec.seed = 3;
    const CompositeProblem problems[] = {fbtest::half_square(), fbtest::lasso_1d(),
                                         build_problem(spec)};
    for (const auto& p : problems) {
        const double L = *p.smooth.lipschitz_constant;
        const double floor1 = std::min(params.sigma, params.delta * params.theta / L);
        const double floor2 = std::min(1.0, params.theta / (2.0 * L));
        for (int i = 0; i < 50; ++i) {
            const Vector x = fbtest::random_in_domain(p, rng);
            CHECK(linesearch1(p, x, params, params.sigma).stepsize >= floor1 - 1e-12);
            CHECK(linesearch2(p, x, params).stepsize >= floor2 - 1e-12);
        }
    }
}

TEST_CASE("oracle accounting matches an instrumented replay") {
    std::mt19937_64 rng(53);
    const CompositeProblem bases[] = {fbtest::lasso_1d(), fbtest::ppower(0.5, 2),
                                      fbtest::quartic()};
    LinesearchParams params;
    for (const auto& base : bases) {
        for (int i = 0; i < 20; ++i) {
            const Vector x = fbtest::random_in_domain(base, rng);
            {
                auto counted = fbtest::with_counters(base);
                const Vector gx = base.smooth.gradient(x);
                const LinesearchOutcome out =
                    linesearch1(counted.problem, x, params, params.sigma, &gx);
                CHECK(out.prox_calls == out.trials + 1);
                CHECK(out.grad_calls == out.trials + 1);
                CHECK(*counted.prox_calls == out.prox_calls);
                CHECK(*counted.grad_calls == out.grad_calls);
                CHECK(*counted.f_calls == out.f_calls);
            }
            {
                auto counted = fbtest::with_counters(base);
                const double Fx = objective_value(base, x);
                const LinesearchOutcome out = linesearch2(counted.problem, x, params, Fx);
                CHECK(out.prox_calls == 1);
                CHECK(*counted.prox_calls == 1);
                CHECK(*counted.grad_calls == out.grad_calls);
                CHECK(*counted.f_calls == out.f_calls);
            }
        }
    }
}

TEST_CASE("exhausting max_backtracks raises an error carrying the last trial") {
    const CompositeProblem p = fbtest::quartic();
    LinesearchParams params;
    params.max_backtracks = 1;
    try {
        linesearch1(p, Vector::Constant(1, 50.0), params, 1.0);
        FAIL("expected LinesearchError");
    } catch (const LinesearchError& e) {
        CHECK(e.trials() == 1);
        CHECK(e.last_stepsize() == doctest::Approx(0.5));
        CHECK(e.last_lhs() > e.last_rhs());
    }
}

TEST_CASE("segment linesearch reports trial points that leave dom g") {
    // Nonconvex domain {x <= 0.25} U {x >= 0.75}: with theta = 0.8 the trial
    // sequence from x = 2 lands inside the gap before any acceptance.
    CompositeProblem p;
    p.dimension = 1;
    p.smooth.value = [](const Vector& x) { return 0.25 * std::pow(x[0], 4); };
    p.smooth.gradient = [](const Vector& x) {
        return Vector(Vector::Constant(1, std::pow(x[0], 3)));
    };
    auto inside = [](const Vector& x) { return x[0] <= 0.25 || x[0] >= 0.75; };
    p.nonsmooth.value = [inside](const Vector& x) {
        return inside(x) ? ExtReal(0.0) : ExtReal::infinity();
    };
    p.nonsmooth.prox = [inside](double, const Vector& z) {
        if (inside(z)) return z;
        return Vector(Vector::Constant(1, z[0] < 0.5 ? 0.25 : 0.75));
    };
    p.nonsmooth.in_domain = inside;

    LinesearchParams params;
    params.theta = 0.8;
    try {
        linesearch2(p, Vector::Constant(1, 2.0), params);
        FAIL("expected LinesearchError");
    } catch (const LinesearchError& e) {
        CHECK(std::string(e.what()).find("domain") != std::string::npos);
    }
}

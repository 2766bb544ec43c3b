// Acceptance suite: runs every contract the library commits to at desk scale
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include "fbsplit/diagnostics.hpp"
#include "fbsplit/problems.hpp"
#include "fbsplit/prox.hpp"
#include "fbsplit/runner.hpp"
#include "fbsplit/trace_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

using namespace fbsplit;

namespace {

struct Harness {
    int failures = 0;

    void report(const std::string& id, bool passed, const std::string& note) {
        std::printf("[%s] %s: %s\n", passed ? "PASS" : "FAIL", id.c_str(), note.c_str());
        std::fflush(stdout);
        if (!passed) ++failures;
    }
};

Vector vec1(double v) { return Vector::Constant(1, v); }

SolverConfig make_config(Method m, double tol, int max_iter, int max_backtracks = 60) {
    SolverConfig cfg;
    cfg.method = m;
    cfg.residual_tolerance = tol;
    cfg.max_iterations = max_iter;
    cfg.params.max_backtracks = max_backtracks;
    return cfg;
}

struct CatalogEntry {
    std::string name;
    CompositeProblem problem;
};

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> entries;
    {
        ProblemSpec s;
        s.family = ProblemFamily::Lasso;
        s.dimension = 5;
        s.seed = 101;
        s.l1_weight = 0.5;
        entries.push_back({"lasso", build_problem(s)});
    }
    {
        ProblemSpec s;
        s.family = ProblemFamily::PPowerNonneg;
        s.p = 0.5;
        s.dimension = 2;
        entries.push_back({"ppower", build_problem(s)});
    }
    {
        ProblemSpec s;
        s.family = ProblemFamily::BoxLeastSquares;
        s.dimension = 4;
        s.seed = 102;
        entries.push_back({"box", build_problem(s)});
    }
    {
        ProblemSpec s;
        s.family = ProblemFamily::StronglyConvexQuadratic;
        s.dimension = 6;
        s.quad_min = 1.0;
        s.quad_max = 10.0;
        s.seed = 103;
        entries.push_back({"quadratic", build_problem(s)});
    }
    {
        ProblemSpec s;
        s.family = ProblemFamily::ExpUnbounded;
        entries.push_back({"exp", build_problem(s)});
    }
    return entries;
}

Vector random_point(const CompositeProblem& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Vector x(p.dimension);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = u(rng);
    if (!p.nonsmooth.in_domain(x) && p.nonsmooth.project_domain) {
        x = p.nonsmooth.project_domain(x);
    }
    return x;
}

bool ls1_accepts(const CompositeProblem& p, const Vector& x, double alpha, double delta) {
    const Vector J = forward_backward(p, x, alpha);
    const Vector gJ = p.smooth.gradient(J);
    const Vector gx = p.smooth.gradient(x);
    return !(alpha * stable_norm(gJ - gx) > delta * stable_norm(J - x));
}

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

double gap_at(const SolverTrace& trace, std::int64_t k, double f_star) {
    for (const auto& rec : trace.records) {
        if (rec.k == k) return rec.objective_value - f_star;
    }
    throw std::runtime_error("gap_at: index not recorded");
}

std::int64_t first_k_below(const SolverTrace& trace, double f_star, double target) {
    for (const auto& rec : trace.records) {
        if (rec.objective_value - f_star <= target) return rec.k;
    }
    return -1;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// Conditioned so the curvature method is still honestly converging at
// iteration 500 (no bitwise fixed point) while the value gap spans decades.
ProblemSpec acceptance_lasso_spec() {
    ProblemSpec s;
    s.family = ProblemFamily::Lasso;
    s.dimension = 50;
    s.rows = 60;
    s.seed = 7;
    s.l1_weight = 0.5;
    return s;
}

ProblemSpec acceptance_quad_spec() {
    ProblemSpec s;
    s.family = ProblemFamily::StronglyConvexQuadratic;
    s.dimension = 20;
    s.quad_min = 1.0;
    s.quad_max = 100.0;
    s.seed = 5;
    return s;
}

}  // namespace

int main() {
    Harness h;
    const auto t_start = std::chrono::steady_clock::now();

    const auto problems = catalog();
    LinesearchParams params;  // sigma=1, theta=0.5, delta=0.4

    // ---- 1. linesearch exactness on 100 random starts -------------------
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(2024);
        int checked = 0, bad = 0;
        for (const auto& entry : problems) {
            for (int i = 0; i < 20; ++i) {
                const Vector x = random_point(entry.problem, rng);
                const LinesearchOutcome o1 = linesearch1(entry.problem, x, params, params.sigma);
                if (!ls1_accepts(entry.problem, x, o1.stepsize, params.delta)) ++bad;
                if (o1.trials >= 1 &&
                    ls1_accepts(entry.problem, x, o1.stepsize / params.theta, params.delta)) {
                    ++bad;
                }
                const LinesearchOutcome o2 = linesearch2(entry.problem, x, params);
                if (!ls2_accepts(entry.problem, x, o2.stepsize)) ++bad;
                if (o2.trials >= 1 && ls2_accepts(entry.problem, x, o2.stepsize / params.theta)) {
                    ++bad;
                }
                ++checked;
            }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        h.report("01 linesearch-exactness", bad == 0 && checked == 100 && secs < 5.0,
                 std::to_string(checked) + " starts, " + std::to_string(bad) + " violations, " +
                     sci(secs) + " s");
    }

    // ---- 2. forward-backward residual scaling in the stepsize -----------
    {
        std::mt19937_64 rng(2025);
        std::uniform_real_distribution<double> logstep(-3.0, 1.0);
        std::uniform_real_distribution<double> factor(0.0, 2.0);
        int bad = 0;
        const int triples = 1000;
        for (int i = 0; i < triples; ++i) {
            const auto& entry = problems[i % 4];  // families with nontrivial prox behavior
            const Vector x = random_point(entry.problem, rng);
            const double a1 = std::pow(10.0, logstep(rng));
            const double a2 = a1 * std::pow(10.0, factor(rng));
            const double r1 = residual(entry.problem, x, a1);
            const double r2 = residual(entry.problem, x, a2);
            if (!((a2 / a1) * r1 >= r2 - 1e-10 && r2 >= r1 - 1e-10)) ++bad;
        }
        h.report("02 residual-stepsize-monotonicity", bad == 0,
                 std::to_string(triples) + " triples, " + std::to_string(bad) + " violations");
    }

    // Shared traces for criteria 3-10.
    const CompositeProblem lasso50 = build_problem(acceptance_lasso_spec());
    const CompositeProblem quad20 = build_problem(acceptance_quad_spec());
    const CompositeProblem ppower1 = build_problem([] {
        ProblemSpec s;
        s.family = ProblemFamily::PPowerNonneg;
        s.p = 0.5;
        s.dimension = 1;
        return s;
    }());

    const SolverTrace lasso_m1 =
        solve_method1(lasso50, make_config(Method::Method1, 0.0, 500), Vector::Zero(50));
    const SolverTrace lasso_m2 =
        solve_method2(lasso50, make_config(Method::Method2, 0.0, 500), Vector::Zero(50));
    const SolverTrace ppower_m1 =
        solve_method1(ppower1, make_config(Method::Method1, 0.0, 801, 1200), vec1(1.0));
    const SolverTrace ppower_m2 =
        solve_method2(ppower1, make_config(Method::Method2, 0.0, 501, 200), vec1(1.0));
    const SolverTrace quad_m1 =
        solve_method1(quad20, make_config(Method::Method1, 0.0, 450), Vector::Zero(20));
    const SolverTrace quad_m2 =
        solve_method2(quad20, make_config(Method::Method2, 0.0, 200), Vector::Zero(20));
    const SolverTrace quad_m3 =
        solve_method3(quad20, make_config(Method::Method3, 0.0, 450), Vector::Zero(20));

    const ReferenceSolution lasso_ref = reference_solution(lasso50);

    // ---- 3. descent certificates on 500+ iteration traces ---------------
    {
        std::ostringstream note;
        bool ok = true;
        const struct {
            const SolverTrace* trace;
            Method method;
            const char* label;
        } jobs[] = {{&lasso_m1, Method::Method1, "lasso/m1"},
                    {&lasso_m2, Method::Method2, "lasso/m2"},
                    {&ppower_m1, Method::Method1, "ppower/m1"},
                    {&ppower_m2, Method::Method2, "ppower/m2"}};
        for (const auto& job : jobs) {
            const Certificate c = certify_descent(*job.trace, job.method, params.delta);
            ok = ok && c.passed;
            note << job.label << " margin " << sci(c.worst_margin) << "; ";
        }
        h.report("03 descent-certificates", ok, note.str());
    }

    // ---- 4. Fejer / quasi-Fejer certificates -----------------------------
    {
        const Vector ppower_star = *ppower1.known_solution;
        const Certificate c1 = certify_fejer(lasso_m1, lasso_ref.x_star, FejerMode::Fejer);
        const Certificate c2 = certify_fejer(lasso_m2, lasso_ref.x_star, FejerMode::QuasiFejer);
        const Certificate c3 = certify_fejer(ppower_m1, ppower_star, FejerMode::Fejer);
        const Certificate c4 = certify_fejer(ppower_m2, ppower_star, FejerMode::QuasiFejer);
        const bool ok = c1.passed && c2.passed && c3.passed && c4.passed;
        h.report("04 fejer-certificates", ok,
                 "worst margins " + sci(c1.worst_margin) + ", " + sci(c2.worst_margin) + ", " +
                     sci(c3.worst_margin) + ", " + sci(c4.worst_margin));
    }

    // ---- 5. sublinear value bound + k*gap shrink -------------------------
    {
        const double fq = *quad20.known_optimal_value;
        const double dq = (Vector::Zero(20) - *quad20.known_solution).norm();
        const Certificate cq = certify_rate_1k(quad_m1, fq, min_stepsize(quad_m1), dq);

        const double dl = (Vector::Zero(50) - lasso_ref.x_star).norm();
        const Certificate cl =
            certify_rate_1k(lasso_m1, lasso_ref.f_star, min_stepsize(lasso_m1), dl);

        const double q100 = 100.0 * gap_at(quad_m1, 100, fq);
        const double q400 = 400.0 * gap_at(quad_m1, 400, fq);
        const double l100 = 100.0 * gap_at(lasso_m1, 100, lasso_ref.f_star);
        const double l400 = 400.0 * gap_at(lasso_m1, 400, lasso_ref.f_star);
        const bool shrink = q400 < 0.5 * q100 && l400 < 0.5 * l100;
        h.report("05 sublinear-rate", cq.passed && cl.passed && shrink,
                 "bounds hold; k*gap 400 vs 100: quad " + sci(q400) + " vs " + sci(q100) +
                     ", lasso " + sci(l400) + " vs " + sci(l100));
    }

    // ---- 6. accelerated bound + head-to-head iteration count -------------
    {
        const double fq = *quad20.known_optimal_value;
        const double dq = (Vector::Zero(20) - *quad20.known_solution).norm();
        const Certificate c = certify_rate_accelerated(quad_m3, fq, dq, params.sigma);

        const SolverTrace quad_m1_long =
            solve_method1(quad20, make_config(Method::Method1, 0.0, 5000), Vector::Zero(20));
        const std::int64_t k3 = first_k_below(quad_m3, fq, 1e-8);
        const std::int64_t k1 = first_k_below(quad_m1_long, fq, 1e-8);
        const bool faster = k3 >= 0 && k1 >= 0 && k3 < k1;
        h.report("06 accelerated-rate", c.passed && faster,
                 "bound margin " + sci(c.worst_margin) + "; iterations to 1e-8 gap: accelerated " +
                     std::to_string(k3) + " vs curvature " + std::to_string(k1));
    }

    // ---- 7. strongly convex contraction ----------------------------------
    {
        const Certificate c = certify_linear_rate(quad_m1, *quad20.known_solution,
                                                  *quad20.smooth.strong_convexity,
                                                  min_stepsize(quad_m1));
        h.report("07 linear-contraction", c.passed, "worst margin " + sci(c.worst_margin));
    }

    // ---- 8. stepsize floors on known-L traces -----------------------------
    {
        const CompositeProblem box10 = build_problem([] {
            ProblemSpec s;
            s.family = ProblemFamily::BoxLeastSquares;
            s.dimension = 10;
            s.rows = 20;
            s.seed = 9;
            return s;
        }());
        // The segment rule compares function values agreeing to ||x-J||^2, so
        // once a run sits at the rounding floor its accept test is noise;
        // floor traces stop at a tolerance that precedes that regime.
        const SolverTrace box_m1 =
            solve_method1(box10, make_config(Method::Method1, 1e-6, 100), Vector::Zero(10));
        const SolverTrace box_m2 =
            solve_method2(box10, make_config(Method::Method2, 1e-6, 100), Vector::Zero(10));

        bool ok = true;
        std::ostringstream note;
        const struct {
            const SolverTrace* trace;
            const CompositeProblem* problem;
            Method method;
            const char* label;
        } jobs[] = {{&quad_m1, &quad20, Method::Method1, "quad/m1"},
                    {&quad_m2, &quad20, Method::Method2, "quad/m2"},
                    {&lasso_m1, &lasso50, Method::Method1, "lasso/m1"},
                    {&lasso_m2, &lasso50, Method::Method2, "lasso/m2"},
                    {&box_m1, &box10, Method::Method1, "box/m1"},
                    {&box_m2, &box10, Method::Method2, "box/m2"}};
        for (const auto& job : jobs) {
            const Certificate c = certify_stepsize_floor(
                *job.trace, *job.problem->smooth.lipschitz_constant, params, job.method);
            ok = ok && c.passed;
            note << job.label << " " << sci(c.worst_margin) << "; ";
        }
        h.report("08 stepsize-floors", ok, note.str());
    }

    // ---- 9. p-power worked example ---------------------------------------
    {
        bool decreasing = true;
        for (size_t i = 0; i + 1 < ppower_m1.records.size(); ++i) {
            const double xi = (*ppower_m1.records[i].x)[0];
            const double xn = (*ppower_m1.records[i + 1].x)[0];
            if (!(xi > xn && xn > 0.0)) decreasing = false;
        }
        h.report("09a ppower-decreasing-positive-iterates", decreasing,
                 std::to_string(ppower_m1.records.size()) + " records, final x " +
                     sci((*ppower_m1.records.back().x)[0]));

        bool stepsize_bound = true;
        for (const auto& rec : ppower_m1.records) {
            const double x = (*rec.x)[0];
            if (rec.stepsize > 0.4 / 0.5 * std::pow(x, 0.5) * (1.0 + 1e-12)) {
                stepsize_bound = false;
            }
        }
        const bool vanishing = ppower_m1.records.back().stepsize < 1e-6;
        h.report("09b ppower-stepsize-bound", stepsize_bound && vanishing,
                 "alpha_k <= (delta/p) x_k^{1-p} at every k; final alpha " +
                     sci(ppower_m1.records.back().stepsize));

        const Certificate ratio = certify_distance_ratio(ppower_m1, *ppower1.known_solution,
                                                         -0.5, 1.0 / params.theta);
        h.report("09c ppower-distance-ratio-bound", ratio.passed, ratio.details);
        // The accepted trial sits one backtrack below the acceptance
        // threshold u <= 1 - (1-delta)^{1/p}, so the ratio provably stays
        // below 1/(delta*theta) yet can exceed 1/theta; report that bound too.
        const Certificate provable = certify_distance_ratio(
            ppower_m1, *ppower1.known_solution, -0.5, 1.0 / (params.delta * params.theta));
        std::printf("[INFO] 09c-note: derivable bound 1/(delta*theta) = %.1f %s (sup %s)\n",
                    1.0 / (params.delta * params.theta),
                    provable.passed ? "holds" : "violated",
                    sci(1.0 / (params.delta * params.theta) - provable.worst_margin).c_str());
        std::fflush(stdout);

        const double g200 = 200.0 * gap_at(ppower_m1, 200, 0.0);
        const double g800 = 800.0 * gap_at(ppower_m1, 800, 0.0);
        h.report("09d ppower-kgap-shrink", g800 < g200,
                 "k*gap " + sci(g800) + " at 800 vs " + sci(g200) + " at 200");
    }

    // ---- 10. residual decay proxy on long traces --------------------------
    {
        const CompositeProblem box10 = build_problem([] {
            ProblemSpec s;
            s.family = ProblemFamily::BoxLeastSquares;
            s.dimension = 10;
            s.rows = 20;
            s.seed = 9;
            return s;
        }());
        const CompositeProblem exp1 = build_problem([] {
            ProblemSpec s;
            s.family = ProblemFamily::ExpUnbounded;
            return s;
        }());
        const SolverTrace box_m1 =
            solve_method1(box10, make_config(Method::Method1, 0.0, 400), Vector::Zero(10));
        const SolverTrace exp_m1 =
            solve_method1(exp1, make_config(Method::Method1, 0.0, 400), vec1(0.0));

        bool ok = true;
        std::ostringstream note;
        const struct {
            const SolverTrace* trace;
            const char* label;
        } jobs[] = {{&lasso_m1, "lasso"},
                    {&quad_m1, "quad"},
                    {&ppower_m1, "ppower"},
                    {&box_m1, "box"},
                    {&exp_m1, "exp"}};
        for (const auto& job : jobs) {
            const Certificate c = certify_residual_decay(*job.trace);
            ok = ok && c.passed;
            note << job.label << (c.passed ? " ok; " : " FAIL; ");
        }
        h.report("10 residual-decay", ok, note.str());
    }

    // ---- 11. oracle accounting -------------------------------------------
    {
        std::int64_t expected_m1 = 0;
        for (const auto& rec : lasso_m1.records) expected_m1 += rec.ls_trials + 1;
        const bool m1_ok = lasso_m1.records.back().cum_prox == expected_m1;
        const bool m2_ok = lasso_m2.records.back().cum_prox ==
                           static_cast<std::int64_t>(lasso_m2.records.size());

        // Same identities through a compare run.
        RunConfig c1;
        c1.problem = acceptance_lasso_spec();
        c1.solver = make_config(Method::Method1, 0.0, 200);
        c1.output_dir = "acceptance_out/compare";
        RunConfig c2 = c1;
        c2.solver.method = Method::Method2;
        std::filesystem::remove_all("acceptance_out/compare");
        const CompareResult cmp = compare({c1, c2});
        const bool cmp_ok = cmp.rows[1].cum_prox == static_cast<std::int64_t>(cmp.rows[1].iterations) &&
                            cmp.rows[0].cum_prox >= static_cast<std::int64_t>(cmp.rows[0].iterations);
        h.report("11 oracle-accounting", m1_ok && m2_ok && cmp_ok,
                 "m1 cum_prox = sum(trials+1) = " + std::to_string(expected_m1) +
                     "; m2 cum_prox = iterations = " +
                     std::to_string(lasso_m2.records.size()));
    }

    // ---- 12. deterministic trace files -------------------------------------
    {
        RunConfig cfg;
        cfg.problem = acceptance_lasso_spec();
        cfg.solver = make_config(Method::Method1, 0.0, 150);
        cfg.output_dir = "acceptance_out/determinism";
        std::filesystem::remove_all(cfg.output_dir);
        run(cfg);
        const std::string first = read_file(cfg.output_dir + "/trace.csv");
        run(cfg);
        const std::string second = read_file(cfg.output_dir + "/trace.csv");
        h.report("12 deterministic-traces", !first.empty() && first == second,
                 std::to_string(first.size()) + " bytes, byte-identical");
    }

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::printf("%d criterion(s) failed; total runtime %.1f s\n", h.failures, total);
    return h.failures;
}

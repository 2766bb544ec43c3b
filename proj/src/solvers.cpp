#include "fbsplit/solvers.hpp"

#include "fbsplit/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbsplit {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ResidualTolerance: return "ResidualTolerance";
        case Termination::MaxIterations: return "MaxIterations";
        case Termination::LinesearchFailure: return "LinesearchFailure";
        case Termination::Divergence: return "Divergence";
    }
    return "unknown";
}

namespace {

struct Counters {
    std::int64_t prox = 0;
    std::int64_t grad = 0;
    std::int64_t f = 0;

    void absorb(const LinesearchOutcome& out) {
        prox += out.prox_calls;
        grad += out.grad_calls;
        f += out.f_calls;
    }
};

IterationRecord make_record(const CompositeProblem& problem, const SolverConfig& config,
                            std::int64_t k, const Vector& x, double objective_value,
                            double stepsize, double residual_norm, double step_norm,
                            int ls_trials, const Counters& c) {
    IterationRecord rec;
    rec.k = k;
    if (config.record_iterates) rec.x = x;
    rec.objective_value = objective_value;
    rec.stepsize = stepsize;
    rec.residual_norm = residual_norm;
    rec.step_norm = step_norm;
    rec.ls_trials = ls_trials;
    rec.cum_prox = c.prox;
    rec.cum_grad = c.grad;
    rec.cum_f = c.f;
    if (problem.known_solution) rec.dist_to_solution = stable_norm(x - *problem.known_solution);
    return rec;
}

void check_start(const CompositeProblem& problem, const SolverConfig& config, const Vector& x0,
                 Method expected) {
    config.validate(problem);
    if (config.method != expected) {
        throw std::invalid_argument("solver config names a different method");
    }
    check_dimension(problem, x0);
    if (!x0.allFinite()) {
        throw std::invalid_argument("x0 must have finite coordinates");
    }
    if (!problem.nonsmooth.in_domain(x0)) {
        throw std::invalid_argument("x0 must lie in dom g");
    }
}

// Failure snapshot so a partial trace still satisfies the record invariants.
void record_linesearch_failure(SolverTrace& trace, const CompositeProblem& problem,
                               const SolverConfig& config, std::int64_t k, const Vector& x,
                               double objective_at_x, const LinesearchError& err, Counters& c) {
    trace.records.push_back(make_record(problem, config, k, x, objective_at_x,
                                        err.last_stepsize(), 0.0, 0.0, err.trials(), c));
    trace.termination = Termination::LinesearchFailure;
    trace.final_point = x;
}

}  // namespace

SolverTrace solve_method1(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0) {
    check_start(problem, config, x0, Method::Method1);

    SolverTrace trace;
    trace.config = config;

    Vector x = x0;
    Counters c;
    Vector grad_x = problem.smooth.gradient(x);
    c.grad += 1;

    for (std::int64_t k = 0; k < config.max_iterations; ++k) {
        double F = objective_value(problem, x);
        c.f += 1;
        LinesearchOutcome out;
        try {
            out = linesearch1(problem, x, config.params, config.params.sigma, &grad_x);
        } catch (const LinesearchError& err) {
            c.prox += err.trials() + 1;
            c.grad += err.trials() + 1;
            record_linesearch_failure(trace, problem, config, k, x, F, err, c);
            return trace;
        }
        c.absorb(out);
        const double res = stable_norm(x - out.accepted_point);
        trace.records.push_back(make_record(problem, config, k, x, F, out.stepsize, res, res,
                                            out.trials, c));
        if (res <= config.residual_tolerance) {
            trace.termination = Termination::ResidualTolerance;
            trace.final_point = x;
            return trace;
        }
        x = std::move(out.accepted_point);
        grad_x = std::move(out.grad_at_accepted);
    }
    trace.termination = Termination::MaxIterations;
    trace.final_point = x;
    return trace;
}

SolverTrace solve_method2(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0) {
    check_start(problem, config, x0, Method::Method2);

    SolverTrace trace;
    trace.config = config;

    Vector x = x0;
    Counters c;
    double F = objective_value(problem, x);
    c.f += 1;

    for (std::int64_t k = 0; k < config.max_iterations; ++k) {
        LinesearchOutcome out;
        try {
            out = linesearch2(problem, x, config.params, F);
        } catch (const LinesearchError& err) {
            c.prox += 1;
            c.grad += 1;
            c.f += err.trials() + 1;
            record_linesearch_failure(trace, problem, config, k, x, F, err, c);
            return trace;
        }
        c.absorb(out);
        const double res = stable_norm(x - out.accepted_point);
        const double beta = out.stepsize;
        trace.records.push_back(make_record(problem, config, k, x, F, beta, res, beta * res,
                                            out.trials, c));
        if (res <= config.residual_tolerance) {
            trace.termination = Termination::ResidualTolerance;
            trace.final_point = x;
            return trace;
        }
        x = x - beta * (x - out.accepted_point);
        F = *out.objective_at_step;  // accepted trial already evaluated (f+g)(x^{k+1})
    }
    trace.termination = Termination::MaxIterations;
    trace.final_point = x;
    return trace;
}

SolverTrace solve_method3(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0) {
    check_start(problem, config, x0, Method::Method3);

    SolverTrace trace;
    trace.config = config;

    Vector x_prev = x0;  // x^{-1} = x^0
    Vector x = x0;
    double t = 1.0;
    double alpha_prev = config.params.sigma;
    Counters c;

    for (std::int64_t k = 0; k < config.max_iterations; ++k) {
        const double F = objective_value(problem, x);
        c.f += 1;
        const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        const Vector y = x + ((t - 1.0) / t_next) * (x - x_prev);
        const Vector y_proj = problem.nonsmooth.project_domain(y);
        Vector grad_y = problem.smooth.gradient(y_proj);
        if (!grad_y.allFinite()) throw MalformedProblemError("non-finite gradient");
        c.grad += 1;

        LinesearchOutcome out;
        try {
            out = linesearch1(problem, y_proj, config.params, alpha_prev, &grad_y);
        } catch (const LinesearchError& err) {
            c.prox += err.trials() + 1;
            c.grad += err.trials() + 1;
            record_linesearch_failure(trace, problem, config, k, x, F, err, c);
            return trace;
        }
        c.absorb(out);
        const double res = stable_norm(out.accepted_point - y_proj);
        const double step = stable_norm(out.accepted_point - x);
        IterationRecord rec = make_record(problem, config, k, x, F, out.stepsize, res, step,
                                          out.trials, c);
        rec.t_k = t;
        trace.records.push_back(std::move(rec));

        if (res <= config.residual_tolerance) {
            trace.termination = Termination::ResidualTolerance;
            trace.final_point = std::move(out.accepted_point);  // x^{k+1} is optimal at the stop test
            return trace;
        }
        x_prev = std::move(x);
        x = std::move(out.accepted_point);
        t = t_next;
        alpha_prev = out.stepsize;
    }
    trace.termination = Termination::MaxIterations;
    trace.final_point = x;
    return trace;
}

SolverTrace solve_fixed_step(const CompositeProblem& problem, const SolverConfig& config,
                             const Vector& x0) {
    check_start(problem, config, x0, Method::FixedStep);
    const double alpha = *config.fixed_stepsize;

    SolverTrace trace;
    trace.config = config;

    Vector x = x0;
    Counters c;
    // Divergence guard: classical iteration with alpha > 2/L may blow up.
    double divergence_bound = std::numeric_limits<double>::infinity();

    for (std::int64_t k = 0; k < config.max_iterations; ++k) {
        const double F = objective_value(problem, x);
        c.f += 1;
        if (k == 0) divergence_bound = 1e6 * (std::abs(F) + 1.0);
        Vector grad = problem.smooth.gradient(x);
        if (!grad.allFinite()) throw MalformedProblemError("non-finite gradient");
        c.grad += 1;
        Vector J = problem.nonsmooth.prox(alpha, x - alpha * grad);
        c.prox += 1;
        const double res = stable_norm(x - J);
        trace.records.push_back(make_record(problem, config, k, x, F, alpha, res, res, 0, c));
        if (F > divergence_bound) {
            trace.termination = Termination::Divergence;
            trace.final_point = x;
            return trace;
        }
        if (res <= config.residual_tolerance) {
            trace.termination = Termination::ResidualTolerance;
            trace.final_point = x;
            return trace;
        }
        x = std::move(J);
    }
    trace.termination = Termination::MaxIterations;
    trace.final_point = x;
    return trace;
}

SolverTrace solve_descent_lemma(const CompositeProblem& problem, const SolverConfig& config,
                                const Vector& x0) {
    check_start(problem, config, x0, Method::DescentLemmaLS);

    SolverTrace trace;
    trace.config = config;

    Vector x = x0;
    Counters c;

    for (std::int64_t k = 0; k < config.max_iterations; ++k) {
        const double F = objective_value(problem, x);
        c.f += 1;
        LinesearchOutcome out;
        try {
            out = linesearch_descent_lemma(problem, x, config.params);
        } catch (const LinesearchError& err) {
            c.prox += err.trials() + 1;
            c.grad += 1;
            c.f += err.trials() + 2;
            record_linesearch_failure(trace, problem, config, k, x, F, err, c);
            return trace;
        }
        c.absorb(out);
        const double res = stable_norm(x - out.accepted_point);
        trace.records.push_back(make_record(problem, config, k, x, F, out.stepsize, res, res,
                                            out.trials, c));
        if (res <= config.residual_tolerance) {
            trace.termination = Termination::ResidualTolerance;
            trace.final_point = x;
            return trace;
        }
        x = std::move(out.accepted_point);
    }
    trace.termination = Termination::MaxIterations;
    trace.final_point = x;
    return trace;
}

SolverTrace solve(const CompositeProblem& problem, const SolverConfig& config, const Vector& x0) {
    switch (config.method) {
        case Method::Method1: return solve_method1(problem, config, x0);
        case Method::Method2: return solve_method2(problem, config, x0);
        case Method::Method3: return solve_method3(problem, config, x0);
        case Method::FixedStep: return solve_fixed_step(problem, config, x0);
        case Method::DescentLemmaLS: return solve_descent_lemma(problem, config, x0);
    }
    throw std::invalid_argument("unknown method");
}

double min_stepsize(const SolverTrace& trace) {
    if (trace.records.empty()) throw std::invalid_argument("min_stepsize: empty trace");
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : trace.records) m = std::min(m, r.stepsize);
    return m;
}

}  // namespace fbsplit

#include "fbsplit/linesearch.hpp"

#include "fbsplit/prox.hpp"

#include <cmath>

namespace fbsplit {

namespace {

Vector gradient_checked(const CompositeProblem& problem, const Vector& x) {
    Vector g = problem.smooth.gradient(x);
    if (!g.allFinite()) throw MalformedProblemError("non-finite gradient");
    return g;
}

}  // namespace

LinesearchOutcome linesearch1(const CompositeProblem& problem, const Vector& x,
                              const LinesearchParams& params, double initial,
                              const Vector* grad_at_x) {
    params.validate();
    check_dimension(problem, x);
    if (!(initial > 0.0) || !std::isfinite(initial)) {
        throw std::invalid_argument("linesearch1: initial stepsize must be positive");
    }
    if (!problem.nonsmooth.in_domain(x)) {
        throw std::invalid_argument("linesearch1: x must lie in dom g");
    }

    const Vector gx = grad_at_x ? *grad_at_x : gradient_checked(problem, x);

    LinesearchOutcome out;
    out.stepsize = initial;
    double alpha = initial;
    Vector J = problem.nonsmooth.prox(alpha, x - alpha * gx);
    ++out.prox_calls;
    double dist = stable_norm(J - x);
    Vector gJ = gradient_checked(problem, J);
    ++out.grad_calls;

    if (dist <= kZeroResidualCutoff * stable_norm(x)) {
        out.accepted_point = std::move(J);
        out.grad_at_accepted = std::move(gJ);
        return out;
    }

    while (alpha * stable_norm(gJ - gx) > params.delta * dist) {
        if (out.trials >= params.max_backtracks) {
            throw LinesearchError("curvature linesearch exhausted max_backtracks", alpha,
                                  out.trials, alpha * stable_norm(gJ - gx), params.delta * dist);
        }
        alpha *= params.theta;
        ++out.trials;
        J = problem.nonsmooth.prox(alpha, x - alpha * gx);
        ++out.prox_calls;
        dist = stable_norm(J - x);
        gJ = gradient_checked(problem, J);
        ++out.grad_calls;
    }

    out.stepsize = alpha;
    out.accepted_point = std::move(J);
    out.grad_at_accepted = std::move(gJ);
    return out;
}

LinesearchOutcome linesearch2(const CompositeProblem& problem, const Vector& x,
                              const LinesearchParams& params,
                              std::optional<double> objective_at_x) {
    params.validate();
    check_dimension(problem, x);
    if (!problem.nonsmooth.in_domain(x)) {
        throw std::invalid_argument("linesearch2: x must lie in dom g");
    }

    const double Fx = objective_at_x ? *objective_at_x : objective_value(problem, x);
    const Vector gx = gradient_checked(problem, x);

    LinesearchOutcome out;
    out.grad_calls = 1;
    Vector Jx = problem.nonsmooth.prox(1.0, x - gx);
    out.prox_calls = 1;

    const Vector direction = x - Jx;  // relaxed point is x - beta*direction
    const double dist2 = direction.squaredNorm();

    if (stable_norm(direction) <= kZeroResidualCutoff * stable_norm(x)) {
        out.stepsize = 1.0;
        out.accepted_point = std::move(Jx);
        out.objective_at_step = Fx;
        return out;
    }

    const ExtReal g_at_x = problem.nonsmooth.value(x);
    const ExtReal g_at_J = problem.nonsmooth.value(Jx);
    if (!g_at_x.is_finite() || !g_at_J.is_finite()) {
        throw MalformedProblemError("nonsmooth value is +infinity at a prox output");
    }
    const double g_gap = g_at_x.value() - g_at_J.value();
    const double slope = gx.dot(direction);

    double beta = 1.0;
    for (;;) {
        const Vector trial = x - beta * direction;
        if (!problem.nonsmooth.in_domain(trial)) {
            throw LinesearchError(
                "segment linesearch: trial point left dom g (numerical domain violation)", beta,
                out.trials, 0.0, 0.0);
        }
        const double Ftrial = objective_value(problem, trial);
        ++out.f_calls;
        const double bound = Fx - beta * g_gap - beta * slope + 0.5 * beta * dist2;
        if (Ftrial <= bound) {
            out.stepsize = beta;
            out.accepted_point = std::move(Jx);
            out.objective_at_step = Ftrial;
            return out;
        }
        if (out.trials >= params.max_backtracks) {
            throw LinesearchError("segment linesearch exhausted max_backtracks", beta, out.trials,
                                  Ftrial, bound);
        }
        beta *= params.theta;
        ++out.trials;
    }
}

LinesearchOutcome linesearch_descent_lemma(const CompositeProblem& problem, const Vector& x,
                                           const LinesearchParams& params) {
    params.validate();
    check_dimension(problem, x);
    if (!problem.nonsmooth.in_domain(x)) {
        throw std::invalid_argument("linesearch_descent_lemma: x must lie in dom g");
    }

    const Vector gx = gradient_checked(problem, x);
    const double fx = problem.smooth.value(x);
    if (!std::isfinite(fx)) throw MalformedProblemError("non-finite smooth value");

    LinesearchOutcome out;
    out.grad_calls = 1;
    out.f_calls = 1;

    double alpha = params.sigma;
    Vector J = problem.nonsmooth.prox(alpha, x - alpha * gx);
    ++out.prox_calls;
    double dist2 = (J - x).squaredNorm();

    if (stable_norm(J - x) <= kZeroResidualCutoff * stable_norm(x)) {
        out.stepsize = alpha;
        out.accepted_point = std::move(J);
        return out;
    }

    for (;;) {
        const double fJ = problem.smooth.value(J);
        ++out.f_calls;
        const double bound = fx + gx.dot(J - x) + dist2 / (2.0 * alpha);
        if (fJ <= bound) {
            out.stepsize = alpha;
            out.accepted_point = std::move(J);
            return out;
        }
        if (out.trials >= params.max_backtracks) {
            throw LinesearchError("descent-lemma linesearch exhausted max_backtracks", alpha,
                                  out.trials, fJ, bound);
        }
        alpha *= params.theta;
        ++out.trials;
        J = problem.nonsmooth.prox(alpha, x - alpha * gx);
        ++out.prox_calls;
        dist2 = (J - x).squaredNorm();
    }
}

}  // namespace fbsplit

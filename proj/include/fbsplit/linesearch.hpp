#pragma once

#include "fbsplit/core.hpp"

#include <optional>

namespace fbsplit {

// Relative zero-residual cutoff: a first trial with
// ||x - J(x, initial)|| <= 1e-14 * ||x|| marks x as a fixed point of the
// forward-backward map to machine precision and short-circuits the search.
// Relative, not absolute: problems with vanishing stepsizes drive residuals
// through every absolute scale while still hundreds of honest iterations
// away from machine zero, and an absolute cutoff would truncate them.
inline constexpr double kZeroResidualCutoff = 1e-14;

struct LinesearchOutcome {
    double stepsize = 0.0;  // accepted alpha (curvature rule) or beta (segment rule)
    Vector accepted_point;  // J(x, alpha) for the curvature rule; J(x, 1) for the segment rule
    int trials = 0;         // number of backtracks; stepsize = initial * theta^trials
    int prox_calls = 0;
    int grad_calls = 0;
    int f_calls = 0;
    // Curvature rule only: gradient of f at accepted_point, reusable by the
    // caller as the next iteration's base gradient.
    Vector grad_at_accepted;
    // Segment rule only: (f+g) at the accepted relaxed point x - beta*(x - J_x).
    std::optional<double> objective_at_step;
};

// Raised when backtracking exhausts max_backtracks; carries the last trial
// so the failure can be examined post mortem. Either the gradient violates
// the continuity the schemes assume or the tolerance is pathological.
class LinesearchError : public std::runtime_error {
public:
    LinesearchError(const std::string& what, double last_stepsize, int trials,
                    double last_lhs, double last_rhs)
        : std::runtime_error(what),
          last_stepsize_(last_stepsize),
          trials_(trials),
          last_lhs_(last_lhs),
          last_rhs_(last_rhs) {}

    double last_stepsize() const { return last_stepsize_; }
    int trials() const { return trials_; }
    double last_lhs() const { return last_lhs_; }
    double last_rhs() const { return last_rhs_; }

private:
    double last_stepsize_;
    int trials_;
    double last_lhs_;
    double last_rhs_;
};

// Curvature-controlled backtracking: returns the first
// alpha in {initial, initial*theta, initial*theta^2, ...} with
//
//   alpha * ||grad f(J(x,alpha)) - grad f(x)|| <= delta * ||J(x,alpha) - x||.
//
// Ties accept (the continue test is strict >). One prox and one gradient
// evaluation per trial; the gradient at x is computed once and reused
// (pass grad_at_x when the caller already has it -- the counters cover
// trial-point work only). If ||x - J(x, initial)|| <= 1e-14 * ||x|| the
// search returns `initial` with zero trials.
LinesearchOutcome linesearch1(const CompositeProblem& problem, const Vector& x,
                              const LinesearchParams& params, double initial,
                              const Vector* grad_at_x = nullptr);

// Relaxation backtracking along the segment from x to J_x = J(x,1): returns
// the first beta in {1, theta, theta^2, ...} with
//
//   (f+g)(x - beta*(x-J_x)) <= (f+g)(x) - beta*[g(x) - g(J_x)]
//                              - beta*<grad f(x), x - J_x> + (beta/2)*||x - J_x||^2.
//
// Exactly one prox evaluation total. objective_at_x, when supplied, must be
// (f+g)(x); otherwise it is computed here (not counted in f_calls, matching
// the curvature rule's treatment of caller-owned quantities).
LinesearchOutcome linesearch2(const CompositeProblem& problem, const Vector& x,
                              const LinesearchParams& params,
                              std::optional<double> objective_at_x = std::nullopt);

// Classical sufficient-decrease backtracking: largest alpha in
// {sigma, sigma*theta, ...} with
//
//   f(J(x,alpha)) <= f(x) + <grad f(x), J(x,alpha) - x> + (1/(2 alpha))*||x - J(x,alpha)||^2.
//
// Baseline for comparison runs only.
LinesearchOutcome linesearch_descent_lemma(const CompositeProblem& problem, const Vector& x,
                                           const LinesearchParams& params);

}  // namespace fbsplit

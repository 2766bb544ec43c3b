#pragma once

#include "fbsplit/core.hpp"
#include "fbsplit/linesearch.hpp"

#include <cstdint>
#include <vector>

namespace fbsplit {

enum class Termination { ResidualTolerance, MaxIterations, LinesearchFailure, Divergence };

std::string to_string(Termination t);

// Per-iteration snapshot. Record k describes the iterate x^k together with
// the linesearch run at it; step_norm is ||x^{k+1} - x^k|| for the step the
// method takes (or would take, for the terminal record) from x^k.
struct IterationRecord {
    std::int64_t k = 0;
    std::optional<Vector> x;  // omitted when record_iterates is false
    double objective_value = 0.0;
    double stepsize = 0.0;       // alpha_k or beta_k
    double residual_norm = 0.0;  // ||x^k - J(x^k,alpha_k)||, ||x^k - J_k||, or ||x^{k+1} - ytilde^k||
    double step_norm = 0.0;
    int ls_trials = 0;
    std::int64_t cum_prox = 0;
    std::int64_t cum_grad = 0;
    std::int64_t cum_f = 0;
    std::optional<double> t_k;               // accelerated method only
    std::optional<double> dist_to_solution;  // when known_solution is present
};

struct SolverTrace {
    std::vector<IterationRecord> records;  // nonempty, k strictly increasing from 0
    Termination termination = Termination::MaxIterations;
    Vector final_point;
    SolverConfig config;  // configuration that produced the trace
};

// Forward-backward method with the curvature linesearch restarted from sigma
// every iteration; x^{k+1} is the linesearch's accepted point (the J computed
// inside it, never recomputed).
SolverTrace solve_method1(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0);

// Relaxed method: J_k = prox_g(x^k - grad f(x^k)) once per iteration, then
// x^{k+1} = x^k - beta_k (x^k - J_k) with beta_k from the segment linesearch.
// Termination residual is ||x^k - J_k||, the distance to the unit-stepsize
// forward-backward point.
SolverTrace solve_method2(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0);

// Accelerated multistep method with extrapolation, domain projection, and the
// curvature linesearch warm-started from the previous accepted stepsize (so
// stepsizes are nonincreasing). Termination residual is ||x^{k+1} - ytilde^k||.
SolverTrace solve_method3(const CompositeProblem& problem, const SolverConfig& config,
                          const Vector& x0);

// Classical iteration with constant stepsize; deliberately permits
// divergence (reported as Termination::Divergence) for comparison runs.
SolverTrace solve_fixed_step(const CompositeProblem& problem, const SolverConfig& config,
                             const Vector& x0);

// Baseline using the sufficient-decrease backtracking rule.
SolverTrace solve_descent_lemma(const CompositeProblem& problem, const SolverConfig& config,
                                const Vector& x0);

// Dispatch on config.method.
SolverTrace solve(const CompositeProblem& problem, const SolverConfig& config, const Vector& x0);

// Smallest recorded stepsize; throws on an empty trace.
double min_stepsize(const SolverTrace& trace);

}  // namespace fbsplit

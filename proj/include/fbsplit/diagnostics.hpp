#pragma once

#include "fbsplit/solvers.hpp"

namespace fbsplit {

// Outcome of one inequality or rate check over a recorded trace. Margins are
// slacks (inequality right side minus left side, possibly normalized as noted
// per certificate); worst_margin is the most negative slack observed and
// passed <=> worst_margin >= -tolerance. Certificates are pure functions of
// the trace: rerunning one yields an identical result.
struct Certificate {
    std::string name;
    bool passed = false;
    double worst_margin = 0.0;
    std::int64_t worst_index = -1;
    double tolerance = 0.0;
    std::string details;
};

enum class FejerMode { Fejer, QuasiFejer };

// Per-iteration descent:
//   curvature method:  F(x^{k+1}) - F(x^k) <= -((1-delta)/alpha_k) ||x^{k+1}-x^k||^2
//   relaxed method:    F(x^k) - F(x^{k+1}) >= (1/2) ||x^{k+1}-x^k||^2
// Slack normalized by |F(x^k)|+1, tolerance 1e-9.
Certificate certify_descent(const SolverTrace& trace, Method method, double delta);

// Fejer mode: ||x^k - x*|| nonincreasing, tolerance 1e-9.
// QuasiFejer mode: ||x^{k+1}-x*||^2 <= ||x^k-x*||^2 + eps_k with
// eps_k = 2[F(x^k) - F(x^{k+1})]; the certificate also reports sum(eps_k).
Certificate certify_fejer(const SolverTrace& trace, const Vector& x_star, FejerMode mode);

// Sublinear value bound, for every k >= 1:
//   curvature method:  F(x^k) - f* <= dist0^2 / (2*alpha_floor*k)
//   relaxed method:    F(x^k) - f* <= (dist0^2 + 2[F(x^0)-f*]) / (2*alpha_floor*k)
// alpha_floor must be the smallest recorded stepsize (> 0). Also reports the
// sequence k*(F(x^k)-f*) and whether its tail (last 25% of iterations)
// decreased, the finite-sample indicator that k*gap -> 0.
Certificate certify_rate_1k(const SolverTrace& trace, double f_star, double alpha_floor,
                            double dist0);

// Accelerated value bound for every k >= 1, with alpha the smallest recorded
// stepsize:
//   F(x^k) - f* <= (2/alpha)*(dist0^2 + 2*sigma*[F(x^0)-f*]) / (k+1)^2
// The details additionally report whether the tighter, unproved bound without
// the 2*sigma[...] term held (comparison only, never pass/fail).
Certificate certify_rate_accelerated(const SolverTrace& trace, double f_star, double dist0,
                                     double sigma);

// Strongly convex contraction with factor 1/sqrt(1 + alpha_floor*mu):
//   ||x^{k+1} - x*|| <= factor * ||x^k - x*|| + 1e-9.
Certificate certify_linear_rate(const SolverTrace& trace, const Vector& x_star, double mu,
                                double alpha_floor);

// Residual decay proxy: with m(K) = min_{1<=k<=K} sqrt(k)*residual_k, checks
// that m strictly decreases across the checkpoints K = N/4, N/2, N. A failure
// means the decay was not observed at this horizon, not that an inequality
// was violated (the underlying statement is asymptotic).
Certificate certify_residual_decay(const SolverTrace& trace);

// Reports sup over the last half of iterations of ||x^k - x*||^{1+lambda} / alpha_k
// for lambda in [-1, 1); a finite supremum indicates the weak stepsize
// condition under which the k*gap -> 0 rate survives vanishing stepsizes.
// When sup_bound is given, asserts sup <= sup_bound + 1e-6; otherwise
// report-only (always passes).
Certificate certify_distance_ratio(const SolverTrace& trace, const Vector& x_star, double lambda,
                                   std::optional<double> sup_bound = std::nullopt);

// Stepsize floors from a global Lipschitz gradient with constant L:
//   curvature method: alpha_k >= min(sigma, delta*theta/L)
//   relaxed method:   beta_k  >= min(1, theta/(2L))
// slack 1e-12. For the accelerated method only positivity of the final
// (smallest) stepsize is asserted; no closed-form floor is available.
Certificate certify_stepsize_floor(const SolverTrace& trace, double lipschitz,
                                   const LinesearchParams& params, Method method);

struct ReferenceSolution {
    Vector x_star;
    double f_star = 0.0;
    std::string provenance;  // recorded into certificates that consume it
};

// x* and f* from problem metadata when present, otherwise from a
// high-accuracy reference solve (curvature method, residual tolerance 1e-12,
// 1e5 iteration cap). Throws when the problem's solution set is empty.
ReferenceSolution reference_solution(const CompositeProblem& problem);

// Recomputes stored objective values (and distances when the problem knows
// its solution) from the oracles; a relative mismatch beyond 1e-8 flags the
// trace as corrupted.
Certificate cross_validate_trace(const SolverTrace& trace, const CompositeProblem& problem);

}  // namespace fbsplit

#pragma once

#include "fbsplit/core.hpp"

#include <vector>

namespace fbsplit {

// Closed-form proximal operators. Every builder returns a fully populated
// NonsmoothPart, including project_domain whenever the domain is closed, so
// the accelerated method runs on any catalog entry. Indicator proxes ignore
// alpha by construction; their prox is the projection for every alpha > 0.

// g = 0: prox is the identity, domain is the whole space.
NonsmoothPart prox_zero();

// g(x) = weight * ||x||_1. Coordinatewise soft threshold
// sign(z_i) * max(|z_i| - alpha*weight, 0); the exact-threshold tie
// |z_i| = alpha*weight maps to 0.
NonsmoothPart prox_l1(double weight);

// g = indicator of the nonnegative orthant; prox clamps at zero.
NonsmoothPart prox_indicator_nonneg();

// g = indicator of the box [lower, upper]; prox clamps coordinatewise.
NonsmoothPart prox_indicator_box(Vector lower, Vector upper);

// g(x) = (weight/2) * ||x||^2; prox(alpha, z) = z / (1 + alpha*weight).
NonsmoothPart prox_quadratic(double weight);

struct ProxCatalogEntry {
    std::string name;
    std::function<NonsmoothPart()> builder;  // default-parameter instance
};

const std::vector<ProxCatalogEntry>& prox_catalog();

// Forward-backward operator J(x, alpha) = prox_{alpha g}(x - alpha * grad f(x)).
Vector forward_backward(const CompositeProblem& problem, const Vector& x, double alpha);

// Variant reusing an already computed gradient at x.
Vector forward_backward(const CompositeProblem& problem, const Vector& x, double alpha,
                        const Vector& grad_at_x);

// ||x - J(x, alpha)||, zero exactly at optimal solutions.
double residual(const CompositeProblem& problem, const Vector& x, double alpha);

}  // namespace fbsplit

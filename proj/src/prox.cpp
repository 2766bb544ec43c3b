#include "fbsplit/prox.hpp"

#include <algorithm>
#include <cmath>

namespace fbsplit {

namespace {

void require_positive_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("prox requires alpha > 0");
    }
}

Vector identity_projection(const Vector& y) { return y; }

}  // namespace

NonsmoothPart prox_zero() {
    NonsmoothPart g;
    g.value = [](const Vector&) { return ExtReal(0.0); };
    g.prox = [](double alpha, const Vector& z) {
        require_positive_alpha(alpha);
        return z;
    };
    g.in_domain = [](const Vector&) { return true; };
    g.project_domain = identity_projection;
    return g;
}

NonsmoothPart prox_l1(double weight) {
    if (!(weight > 0.0)) throw std::invalid_argument("prox_l1: weight must be positive");
    NonsmoothPart g;
    g.value = [weight](const Vector& x) { return ExtReal(weight * x.lpNorm<1>()); };
    g.prox = [weight](double alpha, const Vector& z) {
        require_positive_alpha(alpha);
        const double t = alpha * weight;
        Vector out(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            const double m = std::abs(z[i]) - t;
            out[i] = m > 0.0 ? (z[i] > 0.0 ? m : -m) : 0.0;
        }
        return out;
    };
    g.in_domain = [](const Vector&) { return true; };
    g.project_domain = identity_projection;
    return g;
}

NonsmoothPart prox_indicator_nonneg() {
    NonsmoothPart g;
    g.value = [](const Vector& x) {
        return (x.array() >= 0.0).all() ? ExtReal(0.0) : ExtReal::infinity();
    };
    auto clamp = [](const Vector& z) { return Vector(z.cwiseMax(0.0)); };
    g.prox = [clamp](double alpha, const Vector& z) {
        require_positive_alpha(alpha);
        return clamp(z);
    };
    g.in_domain = [](const Vector& x) { return (x.array() >= 0.0).all(); };
    g.project_domain = clamp;
    return g;
}

NonsmoothPart prox_indicator_box(Vector lower, Vector upper) {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("prox_indicator_box: bound dimensions differ");
    }
    if (!(lower.array() <= upper.array()).all()) {
        throw std::invalid_argument("prox_indicator_box: requires lower <= upper coordinatewise");
    }
    NonsmoothPart g;
    auto inside = [lower, upper](const Vector& x) {
        return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
    };
    auto clamp = [lower, upper](const Vector& z) {
        return Vector(z.cwiseMax(lower).cwiseMin(upper));
    };
    g.value = [inside](const Vector& x) {
        return inside(x) ? ExtReal(0.0) : ExtReal::infinity();
    };
    g.prox = [clamp](double alpha, const Vector& z) {
        require_positive_alpha(alpha);
        return clamp(z);
    };
    g.in_domain = inside;
    g.project_domain = clamp;
    return g;
}

NonsmoothPart prox_quadratic(double weight) {
    if (!(weight > 0.0)) throw std::invalid_argument("prox_quadratic: weight must be positive");
    NonsmoothPart g;
    g.value = [weight](const Vector& x) { return ExtReal(0.5 * weight * x.squaredNorm()); };
    g.prox = [weight](double alpha, const Vector& z) {
        require_positive_alpha(alpha);
        return Vector(z / (1.0 + alpha * weight));
    };
    g.in_domain = [](const Vector&) { return true; };
    g.project_domain = identity_projection;
    return g;
}

const std::vector<ProxCatalogEntry>& prox_catalog() {
    static const std::vector<ProxCatalogEntry> entries = {
        {"zero", [] { return prox_zero(); }},
        {"l1", [] { return prox_l1(0.5); }},
        {"indicator_nonneg", [] { return prox_indicator_nonneg(); }},
        {"indicator_box",
         [] { return prox_indicator_box(Vector::Zero(2), Vector::Ones(2)); }},
        {"quadratic", [] { return prox_quadratic(1.0); }},
    };
    return entries;
}

Vector forward_backward(const CompositeProblem& problem, const Vector& x, double alpha,
                        const Vector& grad_at_x) {
    check_dimension(problem, x);
    require_positive_alpha(alpha);
    if (!problem.nonsmooth.in_domain(x)) {
        throw std::invalid_argument("forward_backward: x must lie in dom g");
    }
    if (!grad_at_x.allFinite()) {
        throw MalformedProblemError("non-finite gradient in forward-backward step");
    }
    return problem.nonsmooth.prox(alpha, x - alpha * grad_at_x);
}

Vector forward_backward(const CompositeProblem& problem, const Vector& x, double alpha) {
    check_dimension(problem, x);
    if (!problem.nonsmooth.in_domain(x)) {
        throw std::invalid_argument("forward_backward: x must lie in dom g");
    }
    return forward_backward(problem, x, alpha, problem.smooth.gradient(x));
}

double residual(const CompositeProblem& problem, const Vector& x, double alpha) {
    return stable_norm(x - forward_backward(problem, x, alpha));
}

}  // namespace fbsplit

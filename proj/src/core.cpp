#include "fbsplit/core.hpp"

#include <cmath>

namespace fbsplit {

ExtReal::ExtReal(double v) : v_(v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("ExtReal: finite constructor given non-finite value");
    }
}

double stable_norm(const Vector& v) { return v.stableNorm(); }

void LinesearchParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("linesearch params: sigma must be positive and finite");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("linesearch params: theta must lie in (0,1)");
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::invalid_argument("linesearch params: delta must lie in (0,1/2)");
    }
    if (max_backtracks < 1) {
        throw std::invalid_argument("linesearch params: max_backtracks must be >= 1");
    }
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Method1: return "method1";
        case Method::Method2: return "method2";
        case Method::Method3: return "method3";
        case Method::FixedStep: return "fixed_step";
        case Method::DescentLemmaLS: return "descent_lemma_ls";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "method1") return Method::Method1;
    if (s == "method2") return Method::Method2;
    if (s == "method3") return Method::Method3;
    if (s == "fixed_step") return Method::FixedStep;
    if (s == "descent_lemma_ls") return Method::DescentLemmaLS;
    throw std::invalid_argument("unknown method name: " + s);
}

void SolverConfig::validate(const CompositeProblem& problem) const {
    params.validate();
    if (!(residual_tolerance >= 0.0)) {
        throw std::invalid_argument("solver config: residual_tolerance must be nonnegative");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("solver config: max_iterations must be positive");
    }
    if (method == Method::FixedStep) {
        if (!fixed_stepsize || !(*fixed_stepsize > 0.0)) {
            throw std::invalid_argument("solver config: fixed_step requires a positive fixed_stepsize");
        }
    }
    if (method == Method::Method3 && !problem.nonsmooth.project_domain) {
        throw std::invalid_argument("solver config: method3 requires the problem to provide project_domain");
    }
}

void check_dimension(const CompositeProblem& problem, const Vector& x) {
    if (x.size() != problem.dimension) {
        throw std::invalid_argument("vector dimension does not match the problem");
    }
}

ExtReal objective(const CompositeProblem& problem, const Vector& x) {
    check_dimension(problem, x);
    if (!problem.nonsmooth.in_domain(x)) return ExtReal::infinity();
    const double fx = problem.smooth.value(x);
    if (!std::isfinite(fx)) {
        throw MalformedProblemError("non-finite smooth value at an in-domain point");
    }
    const ExtReal gx = problem.nonsmooth.value(x);
    if (!gx.is_finite()) {
        throw MalformedProblemError("nonsmooth value is +infinity inside its own domain");
    }
    return ExtReal(fx) + gx;
}

double objective_value(const CompositeProblem& problem, const Vector& x) {
    const ExtReal v = objective(problem, x);
    if (!v.is_finite()) {
        throw std::invalid_argument("objective_value: point is outside dom g");
    }
    return v.value();
}

}  // namespace fbsplit

#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace fbsplit {

using Vector = Eigen::VectorXd;

// Euclidean norm that survives entries whose squares underflow (iterate
// differences reach 1e-200 scales on power-law problems long before the
// entries themselves are subnormal). All residuals, distances, and
// linesearch conditions go through this one function.
double stable_norm(const Vector& v);

// Raised when a problem's oracles are internally inconsistent (non-finite
// smooth value at an in-domain point, non-finite gradient, domain oracle
// disagreeing with the value oracle).
struct MalformedProblemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Extended real: a finite value or +infinity. The finite slot never holds
// NaN/Inf, so indicator functions cannot leak sentinel floats into traces.
class ExtReal {
public:
    ExtReal() = default;
    ExtReal(double v);  // throws std::invalid_argument on NaN/Inf
    static ExtReal infinity() {
        ExtReal r;
        r.finite_ = false;
        return r;
    }

    bool is_finite() const { return finite_; }
    double value() const {
        if (!finite_) throw std::logic_error("ExtReal: value() on +infinity");
        return v_;
    }
    double value_or(double fallback) const { return finite_ ? v_ : fallback; }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return ExtReal(a.v_ + b.v_);
    }
    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    // +infinity compares greater than every finite value.
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }

private:
    double v_ = 0.0;
    bool finite_ = true;
};

// Smooth summand f: value and gradient oracles plus optional analytic
// metadata. The metadata feeds diagnostics only; no solver reads it.
struct SmoothPart {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    std::optional<double> lipschitz_constant;  // L with ||grad f(x)-grad f(y)|| <= L||x-y||
    std::optional<double> strong_convexity;    // mu >= 0
};

// Nonsmooth summand g: value on the extended real line, prox oracle,
// domain membership, and (when the domain is closed) the projection onto it.
struct NonsmoothPart {
    std::function<ExtReal(const Vector&)> value;
    std::function<Vector(double, const Vector&)> prox;  // (alpha, z) with alpha > 0
    std::function<bool(const Vector&)> in_domain;
    std::function<Vector(const Vector&)> project_domain;  // empty target when unavailable
};

struct CompositeProblem {
    SmoothPart smooth;
    NonsmoothPart nonsmooth;
    Eigen::Index dimension = 0;
    std::optional<Vector> known_solution;
    std::optional<double> known_optimal_value;
    // Infimum of f+g when known even though no minimizer exists; kept apart
    // from known_optimal_value which implies an attained minimum.
    std::optional<double> known_infimum;
    bool solution_exists = true;
};

struct LinesearchParams {
    double sigma = 1.0;       // initial trial stepsize for the curvature linesearch
    double theta = 0.5;       // backtrack factor, in (0,1)
    double delta = 0.4;       // curvature acceptance constant, in (0,1/2)
    int max_backtracks = 60;  // theta=0.5 reaches ~1e-18*sigma

    void validate() const;  // throws std::invalid_argument
};

enum class Method { Method1, Method2, Method3, FixedStep, DescentLemmaLS };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SolverConfig {
    Method method = Method::Method1;
    LinesearchParams params;
    std::optional<double> fixed_stepsize;  // FixedStep only
    double residual_tolerance = 1e-10;
    int max_iterations = 1000;
    bool record_iterates = true;

    // Parameter invariants plus per-method requirements (FixedStep needs a
    // stepsize, Method3 needs a domain projection).
    void validate(const CompositeProblem& problem) const;
};

// f(x)+g(x); +infinity exactly when x is outside dom g.
ExtReal objective(const CompositeProblem& problem, const Vector& x);

// Same, but requires the point to be in dom g and returns the finite value.
double objective_value(const CompositeProblem& problem, const Vector& x);

void check_dimension(const CompositeProblem& problem, const Vector& x);

}  // namespace fbsplit

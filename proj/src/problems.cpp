#include "fbsplit/problems.hpp"

#include "fbsplit/prox.hpp"

#include <cmath>
#include <numbers>

namespace fbsplit {

std::string to_string(ProblemFamily f) {
    switch (f) {
        case ProblemFamily::Lasso: return "lasso";
        case ProblemFamily::PPowerNonneg: return "ppower_nonneg";
        case ProblemFamily::BoxLeastSquares: return "box_least_squares";
        case ProblemFamily::StronglyConvexQuadratic: return "strongly_convex_quadratic";
        case ProblemFamily::ExpUnbounded: return "exp_unbounded";
    }
    return "unknown";
}

ProblemFamily problem_family_from_string(const std::string& s) {
    if (s == "lasso") return ProblemFamily::Lasso;
    if (s == "ppower_nonneg") return ProblemFamily::PPowerNonneg;
    if (s == "box_least_squares") return ProblemFamily::BoxLeastSquares;
    if (s == "strongly_convex_quadratic") return ProblemFamily::StronglyConvexQuadratic;
    if (s == "exp_unbounded") return ProblemFamily::ExpUnbounded;
    throw std::invalid_argument("unknown problem family: " + s);
}

double NormalSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms built directly from the engine's bits.
    const double u1 = 1.0 - static_cast<double>(eng_() >> 11) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;       // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Vector NormalSampler::vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = next();
    return v;
}

Eigen::MatrixXd NormalSampler::matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = next();
    return m;
}

double spectral_norm_ata(const Eigen::MatrixXd& A) {
    const Eigen::Index n = A.cols();
    if (n == 0) throw std::invalid_argument("spectral_norm_ata: empty matrix");
    // Deterministic start with a mild tilt so it is not orthogonal to the
    // dominant eigenvector for symmetric sign patterns.
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = A.transpose() * (A * v);
        const double next = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;  // A = 0
        v = w / wn;
        if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda * (1.0 + 1e-8);
}

void ProblemSpec::validate() const {
    if (dimension < 1) throw std::invalid_argument("problem spec: dimension must be positive");
    switch (family) {
        case ProblemFamily::Lasso:
            if (!(l1_weight > 0.0)) {
                throw std::invalid_argument("problem spec: lasso requires l1_weight > 0");
            }
            break;
        case ProblemFamily::PPowerNonneg:
            if (!(p > 0.0 && p < 1.0)) {
                throw std::invalid_argument("problem spec: ppower_nonneg requires p in (0,1)");
            }
            break;
        case ProblemFamily::BoxLeastSquares:
            if (!(box_lower <= box_upper)) {
                throw std::invalid_argument("problem spec: box bounds must satisfy lower <= upper");
            }
            break;
        case ProblemFamily::StronglyConvexQuadratic:
            if (quad_g_weight < 0.0) {
                throw std::invalid_argument("problem spec: quad_g_weight must be nonnegative");
            }
            if (quad_diag.empty()) {
                if (!(quad_min > 0.0) || !(quad_max >= quad_min)) {
                    throw std::invalid_argument(
                        "problem spec: quadratic spectrum requires 0 < quad_min <= quad_max");
                }
            } else {
                for (double q : quad_diag) {
                    if (!(q > 0.0)) {
                        throw std::invalid_argument("problem spec: quad_diag entries must be positive");
                    }
                }
                if (static_cast<int>(quad_diag.size()) != dimension) {
                    throw std::invalid_argument("problem spec: quad_diag size must equal dimension");
                }
            }
            break;
        case ProblemFamily::ExpUnbounded:
            if (dimension != 1) {
                throw std::invalid_argument("problem spec: exp_unbounded is one-dimensional");
            }
            break;
    }
    if (rows < 0) throw std::invalid_argument("problem spec: rows must be nonnegative");
    if (!design.empty() || !rhs.empty()) {
        const bool least_squares = family == ProblemFamily::Lasso ||
                                   family == ProblemFamily::BoxLeastSquares;
        const int m = rows > 0 ? rows : 2 * dimension;
        if (least_squares) {
            if (!design.empty() &&
                static_cast<int>(design.size()) != m * dimension) {
                throw std::invalid_argument("problem spec: design size must be rows*dimension");
            }
            if (!rhs.empty() && static_cast<int>(rhs.size()) != m) {
                throw std::invalid_argument("problem spec: rhs size must equal rows");
            }
        } else if (family == ProblemFamily::StronglyConvexQuadratic) {
            if (!design.empty()) {
                throw std::invalid_argument("problem spec: quadratic takes quad_diag, not design");
            }
            if (!rhs.empty() && static_cast<int>(rhs.size()) != dimension) {
                throw std::invalid_argument("problem spec: rhs size must equal dimension");
            }
        } else {
            throw std::invalid_argument("problem spec: design/rhs not used by this family");
        }
    }
}

namespace {

struct LeastSquaresData {
    Eigen::MatrixXd A;
    Vector b;
};

LeastSquaresData make_least_squares(const ProblemSpec& spec) {
    const int n = spec.dimension;
    const int m = spec.rows > 0 ? spec.rows : 2 * n;
    LeastSquaresData d;
    if (!spec.design.empty()) {
        d.A.resize(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) d.A(i, j) = spec.design[static_cast<size_t>(i) * n + j];
    }
    if (!spec.rhs.empty()) {
        d.b = Eigen::Map<const Vector>(spec.rhs.data(), m);
    }
    if (spec.design.empty() || spec.rhs.empty()) {
        if (!spec.seed) {
            throw std::invalid_argument(
                "problem spec: randomized least-squares instance requires a seed");
        }
        NormalSampler rng(*spec.seed);
        if (spec.design.empty()) d.A = rng.matrix(m, n);
        if (spec.rhs.empty()) d.b = rng.vector(m);
    }
    return d;
}

SmoothPart least_squares_smooth(Eigen::MatrixXd A, Vector b) {
    SmoothPart f;
    f.value = [A, b](const Vector& x) { return 0.5 * (A * x - b).squaredNorm(); };
    f.gradient = [A, b](const Vector& x) { return Vector(A.transpose() * (A * x - b)); };
    f.lipschitz_constant = spectral_norm_ata(A);
    return f;
}

}  // namespace

CompositeProblem build_problem(const ProblemSpec& spec) {
    spec.validate();
    CompositeProblem prob;
    prob.dimension = spec.dimension;

    switch (spec.family) {
        case ProblemFamily::Lasso: {
            auto [A, b] = make_least_squares(spec);
            prob.smooth = least_squares_smooth(A, b);
            prob.nonsmooth = prox_l1(spec.l1_weight);
            if (spec.dimension == 1) {
                // 1-D closed form: minimize 0.5*(a x - b)^2 + lambda*|x|.
                const double a = A(0, 0);
                if (a != 0.0) {
                    const double ab = a * b[0];
                    const double m = std::abs(ab) - spec.l1_weight;
                    const double xs = m > 0.0 ? (ab > 0.0 ? m : -m) / (a * a) : 0.0;
                    prob.known_solution = Vector::Constant(1, xs);
                    prob.known_optimal_value =
                        objective_value(prob, *prob.known_solution);
                    prob.known_infimum = prob.known_optimal_value;
                }
            }
            break;
        }
        case ProblemFamily::PPowerNonneg: {
            const double p = spec.p;
            SmoothPart f;
            f.value = [p](const Vector& x) {
                double s = 0.0;
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    s += std::pow(std::abs(x[i]), 1.0 + p) / (1.0 + p);
                }
                return s;
            };
            // Differentiable everywhere, including 0 where the gradient
            // vanishes; the explicit zero avoids 0^{p-1}.
            f.gradient = [p](const Vector& x) {
                Vector g(x.size());
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    g[i] = x[i] == 0.0 ? 0.0
                                       : (x[i] > 0.0 ? std::pow(x[i], p) : -std::pow(-x[i], p));
                }
                return g;
            };
            prob.smooth = std::move(f);  // no global Lipschitz constant exists
            prob.nonsmooth = prox_indicator_nonneg();
            prob.known_solution = Vector::Zero(spec.dimension);
            prob.known_optimal_value = 0.0;
            prob.known_infimum = 0.0;
            break;
        }
        case ProblemFamily::BoxLeastSquares: {
            auto [A, b] = make_least_squares(spec);
            prob.smooth = least_squares_smooth(A, b);
            prob.nonsmooth = prox_indicator_box(Vector::Constant(spec.dimension, spec.box_lower),
                                                Vector::Constant(spec.dimension, spec.box_upper));
            break;
        }
        case ProblemFamily::StronglyConvexQuadratic: {
            const int n = spec.dimension;
            Vector q(n);
            if (!spec.quad_diag.empty()) {
                q = Eigen::Map<const Vector>(spec.quad_diag.data(), n);
            } else if (n == 1) {
                q[0] = spec.quad_min;
            } else {
                for (int i = 0; i < n; ++i) {
                    q[i] = spec.quad_min +
                           (spec.quad_max - spec.quad_min) * static_cast<double>(i) / (n - 1);
                }
            }
            Vector b;
            if (!spec.rhs.empty()) {
                b = Eigen::Map<const Vector>(spec.rhs.data(), n);
            } else if (spec.seed) {
                b = NormalSampler(*spec.seed).vector(n);
            } else {
                b = Vector::Zero(n);
            }
            SmoothPart f;
            f.value = [q, b](const Vector& x) {
                return 0.5 * x.dot(q.cwiseProduct(x)) - b.dot(x);
            };
            f.gradient = [q, b](const Vector& x) { return Vector(q.cwiseProduct(x) - b); };
            f.lipschitz_constant = q.maxCoeff();
            f.strong_convexity = q.minCoeff();
            prob.smooth = std::move(f);
            const double w = spec.quad_g_weight;
            prob.nonsmooth = w > 0.0 ? prox_quadratic(w) : prox_zero();
            prob.known_solution = Vector((b.array() / (q.array() + w)).matrix());
            prob.known_optimal_value = objective_value(prob, *prob.known_solution);
            prob.known_infimum = prob.known_optimal_value;
            break;
        }
        case ProblemFamily::ExpUnbounded: {
            SmoothPart f;
            f.value = [](const Vector& x) { return std::exp(x[0]); };
            f.gradient = [](const Vector& x) { return Vector(Vector::Constant(1, std::exp(x[0]))); };
            prob.smooth = std::move(f);
            prob.nonsmooth = prox_zero();
            prob.solution_exists = false;
            prob.known_infimum = 0.0;
            break;
        }
    }
    return prob;
}

}  // namespace fbsplit

#pragma once

#include "fbsplit/core.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace fbsplit {

enum class ProblemFamily {
    Lasso,                    // f = 0.5*||Ax-b||^2, g = lambda*||x||_1
    PPowerNonneg,             // f = sum |x_i|^{1+p}/(1+p), g = indicator of x >= 0
    BoxLeastSquares,          // f = 0.5*||Ax-b||^2, g = indicator of a box
    StronglyConvexQuadratic,  // f = 0.5*x'Qx - b'x with Q > 0 diagonal, g = 0 or (w/2)||x||^2
    ExpUnbounded,             // f = exp(x) in 1-D, g = 0; empty solution set, infimum 0
};

std::string to_string(ProblemFamily f);
ProblemFamily problem_family_from_string(const std::string& s);

struct ProblemSpec {
    ProblemFamily family = ProblemFamily::Lasso;
    int dimension = 1;
    std::optional<std::uint64_t> seed;  // randomized instances are reproducible bit-for-bit

    // Least-squares designs (Lasso, BoxLeastSquares).
    int rows = 0;                // 0 -> 2*dimension
    std::vector<double> design;  // explicit A, row-major rows*dimension; empty -> seeded normal
    std::vector<double> rhs;     // explicit b; empty -> seeded normal (quadratic: zeros)

    double l1_weight = 0.5;  // Lasso, > 0
    double p = 0.5;          // PPowerNonneg, in (0,1)

    double box_lower = 0.0;  // BoxLeastSquares bounds, applied to every coordinate
    double box_upper = 1.0;

    std::vector<double> quad_diag;  // explicit eigenvalues of Q; empty -> linspace [quad_min, quad_max]
    double quad_min = 1.0;
    double quad_max = 4.0;
    double quad_g_weight = 0.0;  // 0 -> g = 0, else g = (w/2)||x||^2

    bool operator==(const ProblemSpec&) const = default;

    void validate() const;  // throws std::invalid_argument
};

CompositeProblem build_problem(const ProblemSpec& spec);

// lambda_max(A'A) by power iteration: 1e-10 relative tolerance, 1e4 iteration
// cap, result inflated by 1e-8 relative so stepsize floors derived from it
// stay conservative.
double spectral_norm_ata(const Eigen::MatrixXd& A);

// Deterministic standard normal stream: mt19937_64 bits mapped to 53-bit
// uniforms, Box-Muller transform. Identical output on every platform, unlike
// std::normal_distribution.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}
    double next();
    Vector vector(Eigen::Index n);
    Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols);  // row-major fill order

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fbsplit

#include <algorithm>
#include <cmath>
#include <vector>

#include "sgl/error.hpp"
#include "sgl/solver.hpp"

namespace sgl {

namespace {

// Positive root of beta x^2 - beta d x - 1 = 0, the stationary point of
// -log x + beta/2 (x - d)^2. Valid for any real d.
inline double log_barrier_root(double d, double beta) {
    return 0.5 * (d + std::sqrt(d * d + 4.0 / beta));
}

struct Block {
    double sum;   // sum of d over the block
    Index count;
    double value;
};

}  // namespace

Eigen::VectorXd solve_lambda(const Eigen::VectorXd& d, double beta, double c1, double c2) {
    if (!(beta > 0.0)) throw InvalidConfig("beta must be positive");
    if (!(c1 <= c2)) throw InvalidConfig("eigenvalue bounds require c1 <= c2");

    // Pool adjacent violators. A pooled block minimizes
    // sum_i -log x + beta/2 (x - d_i)^2, whose root depends only on mean(d).
    std::vector<Block> stack;
    stack.reserve(static_cast<std::size_t>(d.size()));
    for (Index i = 0; i < d.size(); ++i) {
        Block b{d[i], 1, log_barrier_root(d[i], beta)};
        while (!stack.empty() && stack.back().value > b.value) {
            b.sum += stack.back().sum;
            b.count += stack.back().count;
            b.value = log_barrier_root(b.sum / static_cast<double>(b.count), beta);
            stack.pop_back();
        }
        stack.push_back(b);
    }

    // Clipping a nondecreasing sequence keeps it nondecreasing, and for a
    // separable convex objective the box-constrained isotonic solution is the
    // clipped unconstrained one.
    Eigen::VectorXd lambda(d.size());
    Index pos = 0;
    for (const Block& b : stack) {
        const double v = std::clamp(b.value, c1, c2);
        for (Index r = 0; r < b.count; ++r) lambda[pos++] = v;
    }
    return lambda;
}

Eigen::VectorXd lambda_update(const SolverState& state) {
    const Eigen::MatrixXd Lw = lap(state.w);
    const Eigen::VectorXd d = (state.U.transpose() * Lw * state.U).diagonal();
    return solve_lambda(d, state.beta, state.c1, state.c2);
}

}  // namespace sgl

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sgl/error.hpp"
#include "sgl/solver.hpp"
#include "test_util.hpp"

using namespace sgl;
using sgl::testing::lambda_enumeration_oracle;
using sgl::testing::lambda_objective;
using sgl::testing::lambda_projected_gradient_oracle;

TEST(SolveLambda, SingleInteriorCoordinate) {
    const Eigen::VectorXd lambda = solve_lambda(Eigen::VectorXd::Constant(1, 1.5), 2.0, 0.1, 10.0);
    EXPECT_NEAR(lambda[0], 1.780776406404415, 1e-12);
    // root of beta x^2 - beta d x - 1
    EXPECT_NEAR(2.0 * lambda[0] * lambda[0] - 2.0 * 1.5 * lambda[0] - 1.0, 0.0, 1e-12);
}

TEST(SolveLambda, ClipsAtUpperBound) {
    EXPECT_EQ(solve_lambda(Eigen::VectorXd::Constant(1, 100.0), 1.0, 0.1, 10.0)[0], 10.0);
}

TEST(SolveLambda, ClipsAtLowerBound) {
    EXPECT_EQ(solve_lambda(Eigen::VectorXd::Constant(1, -50.0), 1.0, 0.5, 10.0)[0], 0.5);
}

TEST(SolveLambda, PoolsOrderViolation) {
    const Eigen::VectorXd lambda = solve_lambda(Eigen::Vector2d(2.0, 1.0), 10.0, 0.01, 100.0);
    const double pooled = 0.5 * (1.5 + std::sqrt(2.25 + 0.4));
    EXPECT_NEAR(lambda[0], pooled, 1e-12);
    EXPECT_NEAR(lambda[1], pooled, 1e-12);
    const Eigen::VectorXd oracle = lambda_projected_gradient_oracle(Eigen::Vector2d(2.0, 1.0), 10.0, 0.01, 100.0);
    EXPECT_NEAR(oracle[0], pooled, 1e-6);
    EXPECT_NEAR(oracle[1], pooled, 1e-6);
}

TEST(SolveLambda, NegativeDStaysPositive) {
    const Eigen::VectorXd lambda = solve_lambda(Eigen::Vector3d(-3.0, -1.0, 0.0), 0.5, 1e-12, 1e6);
    EXPECT_GT(lambda.minCoeff(), 0.0);
}

TEST(SolveLambda, RejectsBadConfig) {
    EXPECT_THROW(solve_lambda(Eigen::VectorXd::Ones(2), 1.0, 2.0, 1.0), InvalidConfig);
    EXPECT_THROW(solve_lambda(Eigen::VectorXd::Ones(2), 0.0, 0.1, 1.0), InvalidConfig);
}

TEST(SolveLambda, StationarityOnFreeUnpooledCoordinates) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd d(6);
        for (Index i = 0; i < 6; ++i) d[i] = u(rng);
        const double beta = 3.0;
        const Eigen::VectorXd x = solve_lambda(d, beta, 0.2, 4.0);
        for (Index i = 0; i < 6; ++i) {
            const bool interior = x[i] > 0.2 && x[i] < 4.0;
            const bool alone = (i == 0 || x[i - 1] != x[i]) && (i == 5 || x[i + 1] != x[i]);
            if (interior && alone) EXPECT_NEAR(-1.0 / x[i] + beta * (x[i] - d[i]), 0.0, 1e-10);
        }
    }
}

// Random instances with both pooling and clipping active.
struct LambdaInstance {
    Eigen::VectorXd d;
    double beta, c1, c2;
};

LambdaInstance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> qd(1, 8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LambdaInstance in;
    const int q = qd(rng);
    in.d.resize(q);
    double base = -1.0 + 2.0 * u(rng);
    for (int i = 0; i < q; ++i) {
        base += -0.6 + 1.6 * u(rng);  // mostly increasing, frequent violations
        in.d[i] = base;
    }
    in.beta = 0.5 + 19.5 * u(rng);
    in.c1 = 0.05 + 0.45 * u(rng);
    in.c2 = in.c1 + 0.5 + 4.0 * u(rng);
    return in;
}

TEST(SolveLambda, MatchesEnumerationOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const LambdaInstance in = random_instance(rng);
        const Eigen::VectorXd x = solve_lambda(in.d, in.beta, in.c1, in.c2);
        const Eigen::VectorXd o = lambda_enumeration_oracle(in.d, in.beta, in.c1, in.c2);
        EXPECT_LE((x - o).cwiseAbs().maxCoeff(), 1e-10) << "trial " << trial;
        for (Index i = 1; i < x.size(); ++i) EXPECT_LE(x[i - 1], x[i]);
        EXPECT_GE(x.minCoeff(), in.c1);
        EXPECT_LE(x.maxCoeff(), in.c2);
    }
}

TEST(SolveLambda, MatchesProjectedGradientOracle) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const LambdaInstance in = random_instance(rng);
        const Eigen::VectorXd x = solve_lambda(in.d, in.beta, in.c1, in.c2);
        const Eigen::VectorXd o = lambda_projected_gradient_oracle(in.d, in.beta, in.c1, in.c2);
        EXPECT_LE((x - o).cwiseAbs().maxCoeff(), 1e-6) << "trial " << trial;
        EXPECT_LE(lambda_objective(x, in.d, in.beta), lambda_objective(o, in.d, in.beta) + 1e-12);
    }
}

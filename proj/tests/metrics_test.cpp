#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sgl/error.hpp"
#include "sgl/metrics.hpp"
#include "test_util.hpp"

using namespace sgl;

TEST(RelativeError, Examples) {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd T = lap(sgl::testing::random_weights(5, rng, 0.1, 2.0));
    EXPECT_EQ(relative_error(T, T), 0.0);
    EXPECT_DOUBLE_EQ(relative_error(2.0 * T, T), 1.0);
    const Eigen::MatrixXd E = lap(sgl::testing::random_weights(5, rng, 0.1, 2.0));
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 5; ++j) {
            num += (E(i, j) - T(i, j)) * (E(i, j) - T(i, j));
            den += T(i, j) * T(i, j);
        }
    EXPECT_NEAR(relative_error(E, T), std::sqrt(num / den), 1e-14);
}

TEST(RelativeError, ScaleCovariance) {
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd T = lap(sgl::testing::random_weights(6, rng, 0.1, 2.0));
    for (double c : {-1.0, 0.0, 0.25, 3.0}) EXPECT_NEAR(relative_error(c * T, T), std::abs(c - 1.0), 1e-14);
}

TEST(RelativeError, Errors) {
    EXPECT_THROW(relative_error(Eigen::MatrixXd::Ones(3, 3), Eigen::MatrixXd::Zero(3, 3)), UndefinedMetric);
    EXPECT_THROW(relative_error(Eigen::MatrixXd::Ones(3, 3), Eigen::MatrixXd::Ones(2, 2)), InvalidDimension);
}

TEST(FScore, Examples) {
    const Eigen::Vector3d a(1, 0, 2);
    EXPECT_EQ(fscore(a, a, 0.0), 1.0);
    EXPECT_EQ(fscore(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 1), 0.0), 0.0);
    EXPECT_DOUBLE_EQ(fscore(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 1, 0), 0.0), 2.0 / 3.0);
    EXPECT_EQ(fscore(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), 0.0), 1.0);
}

TEST(FScore, ToleranceAndCounts) {
    const EdgeCounts c = edge_confusion(Eigen::Vector4d(0.5, 1e-6, 0, 2), Eigen::Vector4d(1, 1, 0, 0), 1e-4);
    EXPECT_EQ(c.tp, 1);
    EXPECT_EQ(c.fn, 1);
    EXPECT_EQ(c.fp, 1);
    EXPECT_EQ(c.tn, 1);
    EXPECT_DOUBLE_EQ(default_edge_tol(Eigen::Vector3d(0, 2, 1)), 2e-4);
}

TEST(FScore, Symmetric) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const Eigen::VectorXd a = sgl::testing::random_weights(8, rng, 0.0, 1.0, 0.4);
        const Eigen::VectorXd b = sgl::testing::random_weights(8, rng, 0.0, 1.0, 0.4);
        EXPECT_EQ(fscore(a, b, 0.1), fscore(b, a, 0.1));
    }
}

TEST(ClusteringAccuracy, Examples) {
    const std::vector<int> truth{0, 0, 1, 1, 2, 2, 3, 3};
    EXPECT_EQ(clustering_accuracy(truth, truth), 1.0);
    EXPECT_EQ(clustering_accuracy({5, 5, 9, 9, 7, 7, 1, 1}, truth), 1.0);
    EXPECT_EQ(clustering_accuracy({5, 5, 9, 9, 7, 7, 1, 7}, truth), 0.875);
    EXPECT_THROW(clustering_accuracy({0, 1}, {0}), InvalidInput);
}

TEST(ClusteringAccuracy, MoreClustersPredictedThanTrue) {
    EXPECT_DOUBLE_EQ(clustering_accuracy({0, 0, 1, 2}, {0, 0, 1, 1}), 0.75);
}

// Exhaustive search and the Hungarian path agree, and accuracy is invariant to relabeling.
TEST(ClusteringAccuracy, PermutationInvarianceAndHungarian) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        const int clusters = 2 + t % 12;
        std::uniform_int_distribution<int> lab(0, clusters - 1);
        std::vector<int> a(60), b(60);
        for (int i = 0; i < 60; ++i) {
            a[i] = lab(rng);
            b[i] = (i % 3 == 0) ? lab(rng) : a[i];
        }
        const double acc = clustering_accuracy(a, b);
        std::vector<int> perm(clusters);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> a2(60);
        for (int i = 0; i < 60; ++i) a2[i] = 100 + perm[a[i]];
        EXPECT_DOUBLE_EQ(clustering_accuracy(a2, b), acc);
        EXPECT_DOUBLE_EQ(clustering_accuracy(b, a2), acc);
    }
}

TEST(Assignment, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int n = 1; n <= 7; ++n) {
        Eigen::MatrixXd W(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) W(i, j) = u(rng);
        const auto assign = max_weight_assignment(W);
        double got = 0.0;
        for (int r = 0; r < n; ++r) got += W(r, assign[r]);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = -1.0;
        do {
            double s = 0.0;
            for (int r = 0; r < n; ++r) s += W(r, perm[r]);
            best = std::max(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        EXPECT_NEAR(got, best, 1e-9);
    }
}

TEST(Evaluate, Report) {
    const Eigen::Vector3d w(1, 0, 2);
    const std::vector<int> labels{0, 0, 1};
    const EvalReport r = evaluate(w, w, &labels, &labels);
    EXPECT_EQ(r.relative_error, 0.0);
    EXPECT_EQ(r.fscore, 1.0);
    ASSERT_TRUE(r.accuracy.has_value());
    EXPECT_EQ(*r.accuracy, 1.0);
    EXPECT_THROW(evaluate(w, Eigen::VectorXd::Ones(6)), InvalidDimension);
}

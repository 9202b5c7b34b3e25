#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "sgl/error.hpp"
#include "sgl/io.hpp"
#include "sgl/linalg.hpp"
#include "sgl/synthetic.hpp"

using namespace sgl;

namespace {

Index zero_eigenvalues(const Eigen::MatrixXd& L) {
    const Eigen::VectorXd ev = symmetric_eigen(L).values;
    return (ev.array() <= 1e-10 * ev.cwiseAbs().maxCoeff()).count();
}

void expect_valid_laplacian(const GroundTruthGraph& g) {
    const Eigen::MatrixXd& L = g.laplacian;
    EXPECT_EQ(L, lap(g.weights));
    EXPECT_EQ(L, L.transpose());
    EXPECT_LE(L.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(symmetric_eigen(L).values.minCoeff(), -1e-9 * L.trace());
    EXPECT_EQ(static_cast<Index>(g.partition.size()), g.nodes());
}

}  // namespace

TEST(KComponent, TwoDisjointEdges) {
    const auto g = gen_k_component(4, 2, 1.0, {}, 1);
    expect_valid_laplacian(g);
    EXPECT_EQ((g.weights.values().array() > 0).count(), 2);
    EXPECT_EQ(zero_eigenvalues(g.laplacian), 2);
    EXPECT_EQ(g.partition, (std::vector<int>{0, 0, 1, 1}));
}

TEST(KComponent, ComponentCountMatchesK) {
    for (int k : {1, 2, 4, 5}) {
        const auto g = gen_k_component(32, k, 0.3, {}, 40 + k);
        expect_valid_laplacian(g);
        EXPECT_EQ(component_count(connected_components(g.weights.values(), 32, 0.0)), k);
        EXPECT_EQ(zero_eigenvalues(g.laplacian), k);
        // no edge crosses blocks
        const EdgeIndexMap map(32);
        for (Index e = 0; e < map.edges(); ++e) {
            const auto [i, j] = map.pair(e);
            if (g.partition[i] != g.partition[j]) EXPECT_EQ(g.weights[e], 0.0);
        }
    }
}

TEST(KComponent, UnevenBlocksAndWeightRange) {
    const auto g = gen_k_component(10, 3, 0.5, {0.5, 0.7}, 3);
    EXPECT_EQ(g.partition, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 2, 2, 2}));
    for (Index e = 0; e < g.weights.size(); ++e)
        if (g.weights[e] > 0) {
            EXPECT_GE(g.weights[e], 0.5);
            EXPECT_LE(g.weights[e], 0.7);
        }
}

TEST(KComponent, Errors) {
    EXPECT_THROW(gen_k_component(4, 5, 0.5, {}, 1), InvalidConfig);
    EXPECT_THROW(gen_k_component(4, 2, 0.5, {0.0, 1.0}, 1), InvalidConfig);
    EXPECT_THROW(gen_k_component(4, 2, 1.5, {}, 1), InvalidConfig);
}

TEST(Generators, SeedDeterminism) {
    EXPECT_EQ(gen_k_component(20, 3, 0.4, {}, 9).weights.values(), gen_k_component(20, 3, 0.4, {}, 9).weights.values());
    EXPECT_NE(gen_k_component(20, 3, 0.4, {}, 9).weights.values(), gen_k_component(20, 3, 0.4, {}, 10).weights.values());
    EXPECT_EQ(gen_grid(3, 4, {}, 2).weights.values(), gen_grid(3, 4, {}, 2).weights.values());
    EXPECT_EQ(gen_erdos_renyi(15, 0.3, {}, 5).weights.values(), gen_erdos_renyi(15, 0.3, {}, 5).weights.values());
    EXPECT_EQ(gen_modular(20, 4, 0.7, 0.05, {}, 5).weights.values(),
              gen_modular(20, 4, 0.7, 0.05, {}, 5).weights.values());
    EXPECT_EQ(sample_gmrf(gen_grid(3, 3, {}, 1), 50, 4), sample_gmrf(gen_grid(3, 3, {}, 1), 50, 4));
}

TEST(Generators, SerializedFormIsByteIdentical) {
    auto serialize = [](std::uint64_t seed) {
        const auto g = gen_k_component(12, 3, 0.5, {}, seed);
        std::ostringstream out;
        out << io::dump(io::to_json(g));
        io::write_csv_matrix(out, sample_gmrf(g, 20, seed + 1));
        return out.str();
    };
    EXPECT_EQ(serialize(42), serialize(42));
}

TEST(Grid, TwoByTwo) {
    const auto g = gen_grid(2, 2, {}, 1);
    expect_valid_laplacian(g);
    EXPECT_EQ((g.weights.values().array() > 0).count(), 4);
    EXPECT_EQ(zero_eigenvalues(g.laplacian), 1);
    const EdgeIndexMap map(4);
    EXPECT_EQ(g.weights[map.index(3, 0)], 0.0);  // diagonal pair is not adjacent
    EXPECT_EQ(g.weights[map.index(2, 1)], 0.0);
}

TEST(Grid, EdgeCountAndConnectivity) {
    const auto g = gen_grid(5, 5, {}, 3);
    expect_valid_laplacian(g);
    EXPECT_EQ((g.weights.values().array() > 0).count(), 40);
    EXPECT_EQ(zero_eigenvalues(g.laplacian), 1);
    EXPECT_THROW(gen_grid(1, 1, {}, 1), InvalidConfig);
}

TEST(ErdosRenyi, CompleteGraphSpectrum) {
    const auto g = gen_erdos_renyi(7, 1.0, {1.5, 1.5}, 2);
    expect_valid_laplacian(g);
    const Eigen::VectorXd ev = symmetric_eigen(g.laplacian).values;
    EXPECT_NEAR(ev[0], 0.0, 1e-12);
    for (Index i = 1; i < 7; ++i) EXPECT_NEAR(ev[i], 7 * 1.5, 1e-12);
}

TEST(ErdosRenyi, ConnectedOrError) {
    const auto g = gen_erdos_renyi(30, 0.15, {}, 8);
    EXPECT_EQ(zero_eigenvalues(g.laplacian), 1);
    EXPECT_THROW(gen_erdos_renyi(30, 0.001, {}, 8, 5), GenerationError);
    EXPECT_THROW(gen_erdos_renyi(30, 0.0, {}, 8), InvalidConfig);
}

TEST(Modular, BlocksAndConnectivity) {
    const auto g = gen_modular(50, 5, 0.8, 0.02, {}, 1);
    expect_valid_laplacian(g);
    EXPECT_EQ(zero_eigenvalues(g.laplacian), 1);
    EXPECT_EQ(component_count(g.partition), 5);
}

TEST(Gmrf, SamplesOrthogonalToOnes) {
    const auto g = gen_erdos_renyi(10, 0.4, {}, 3);
    const Eigen::MatrixXd X = sample_gmrf(g, 200, 4);
    EXPECT_EQ(X.rows(), 200);
    EXPECT_EQ(X.cols(), 10);
    EXPECT_LE(X.rowwise().sum().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Gmrf, CovarianceConvergesToPseudoInverse) {
    const auto g = gen_erdos_renyi(6, 0.6, {}, 5);
    const Eigen::MatrixXd S = sample_covariance(sample_gmrf(g, 100000, 6));
    const Eigen::MatrixXd target = pseudo_inverse(g.laplacian);
    EXPECT_LE((S - target).norm() / target.norm(), 0.05);
}

TEST(Gmrf, SingleSampleShape) {
    const Eigen::MatrixXd X = sample_gmrf(gen_grid(2, 3, {}, 1), 1, 2);
    EXPECT_EQ(X.rows(), 1);
    EXPECT_EQ(X.cols(), 6);
    EXPECT_THROW(sample_gmrf(gen_grid(2, 3, {}, 1), 0, 2), InvalidInput);
}

TEST(Noise, AddsRequestedSpread) {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(4000, 3);
    const Eigen::MatrixXd Y = add_noise(X, 0.1, 9);
    EXPECT_NEAR(std::sqrt(Y.squaredNorm() / Y.size()), 0.1, 0.005);
    EXPECT_EQ(add_noise(X, 0.0, 9), X);
}

TEST(SampleCovariance, Examples) {
    EXPECT_EQ(sample_covariance(Eigen::MatrixXd::Constant(5, 3, 2.5)), Eigen::MatrixXd::Zero(3, 3));
    Eigen::MatrixXd X(2, 1);
    X << 1, -1;
    EXPECT_DOUBLE_EQ(sample_covariance(X)(0, 0), 1.0);
    EXPECT_THROW(sample_covariance(Eigen::MatrixXd::Ones(1, 3)), InvalidInput);
}

TEST(SampleCovariance, IsPsd) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        Eigen::MatrixXd X(5 + t, 8);
        for (Index r = 0; r < X.rows(); ++r)
            for (Index c = 0; c < X.cols(); ++c) X(r, c) = n(rng);
        const Eigen::MatrixXd S = sample_covariance(X);
        EXPECT_EQ(S, S.transpose());
        EXPECT_GE(symmetric_eigen(S).values.minCoeff(), -1e-12);
    }
}

TEST(Structure, NamesRoundTrip) {
    for (auto s : {GraphStructure::ErdosRenyi, GraphStructure::Modular, GraphStructure::Grid, GraphStructure::KComponent})
        EXPECT_EQ(graph_structure_from_string(to_string(s)), s);
    EXPECT_THROW(graph_structure_from_string("tree"), InvalidInput);
}

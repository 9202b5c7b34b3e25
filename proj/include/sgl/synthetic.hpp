#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sgl/laplacian.hpp"

namespace sgl {

enum class GraphStructure { ErdosRenyi, Modular, Grid, KComponent };

std::string to_string(GraphStructure s);
GraphStructure graph_structure_from_string(const std::string& name);

struct WeightRange {
    double lo = 0.1;
    double hi = 3.0;
};

struct GroundTruthGraph {
    Eigen::MatrixXd laplacian;
    WeightVector weights;
    GraphStructure structure = GraphStructure::KComponent;
    std::vector<int> partition;  // node -> block (all zeros for unstructured graphs)

    Index nodes() const noexcept { return weights.nodes(); }
};

/// k disjoint blocks, each a random spanning tree plus Bernoulli(intra_edge_prob)
/// extra edges. Block sizes differ by at most one; nodes are assigned to blocks
/// in contiguous ranges.
GroundTruthGraph gen_k_component(Index p, int k, double intra_edge_prob, WeightRange weights, std::uint64_t seed);

/// rows x cols 4-neighbour lattice.
GroundTruthGraph gen_grid(Index rows, Index cols, WeightRange weights, std::uint64_t seed);

/// G(p, edge_prob), redrawn until connected (at most max_retries draws).
GroundTruthGraph gen_erdos_renyi(Index p, double edge_prob, WeightRange weights, std::uint64_t seed,
                                 int max_retries = 100);

/// Stochastic block model with `blocks` balanced blocks, redrawn until connected.
GroundTruthGraph gen_modular(Index p, int blocks, double p_in, double p_out, WeightRange weights,
                             std::uint64_t seed, int max_retries = 100);

/// n samples (rows) of the improper GMRF N(0, pinv(laplacian)).
Eigen::MatrixXd sample_gmrf(const GroundTruthGraph& graph, Index n, std::uint64_t seed);
Eigen::MatrixXd sample_gmrf(const Eigen::MatrixXd& laplacian, Index n, std::uint64_t seed);

/// Adds i.i.d. N(0, stddev^2) noise to every entry.
Eigen::MatrixXd add_noise(const Eigen::MatrixXd& X, double stddev, std::uint64_t seed);

/// (1/n) Xc^T Xc with column means removed. Throws InvalidInput for n < 2.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& X);

}  // namespace sgl

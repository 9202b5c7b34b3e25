#include "sgl/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sgl/error.hpp"
#include "sgl/kernels.hpp"
#include "sgl/linalg.hpp"

namespace sgl {

std::string to_string(GraphStructure s) {
    switch (s) {
    case GraphStructure::ErdosRenyi: return "erdos_renyi";
    case GraphStructure::Modular: return "modular";
    case GraphStructure::Grid: return "grid";
    case GraphStructure::KComponent: return "k_component";
    }
    return "unknown";
}

GraphStructure graph_structure_from_string(const std::string& name) {
    if (name == "erdos_renyi" || name == "erdos-renyi") return GraphStructure::ErdosRenyi;
    if (name == "modular") return GraphStructure::Modular;
    if (name == "grid") return GraphStructure::Grid;
    if (name == "k_component" || name == "k-component") return GraphStructure::KComponent;
    throw InvalidInput("unknown graph structure '" + name + "'");
}

namespace {

void check_range(WeightRange r) {
    if (!(r.lo > 0.0) || !(r.lo <= r.hi)) throw InvalidConfig("weight range must satisfy 0 < lo <= hi");
}

void check_prob(double prob, const char* name, bool allow_zero) {
    if (!(prob <= 1.0) || !(allow_zero ? prob >= 0.0 : prob > 0.0))
        throw InvalidConfig(std::string(name) + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]"));
}

GroundTruthGraph finish(Eigen::VectorXd w, GraphStructure s, std::vector<int> partition) {
    GroundTruthGraph g;
    g.laplacian = lap(w);
    g.weights = WeightVector(std::move(w));
    g.structure = s;
    g.partition = std::move(partition);
    return g;
}

std::vector<int> balanced_blocks(Index p, int k) {
    // first p % k blocks get one extra node
    std::vector<int> part(static_cast<std::size_t>(p));
    const Index base = p / k;
    const Index extra = p % k;
    Index node = 0;
    for (int b = 0; b < k; ++b) {
        const Index size = base + (b < extra ? 1 : 0);
        for (Index r = 0; r < size; ++r) part[node++] = b;
    }
    return part;
}

}  // namespace

GroundTruthGraph gen_k_component(Index p, int k, double intra_edge_prob, WeightRange weights, std::uint64_t seed) {
    if (p < 2) throw InvalidConfig("p must be >= 2");
    if (k < 1 || k > p) throw InvalidConfig("k must satisfy 1 <= k <= p");
    check_prob(intra_edge_prob, "intra_edge_prob", true);
    check_range(weights);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(weights.lo, weights.hi);
    std::bernoulli_distribution coin(intra_edge_prob);
    const EdgeIndexMap map(p);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(map.edges());
    std::vector<int> part = balanced_blocks(p, k);

    auto add_edge = [&](Index a, Index b) { w[map.index(std::max(a, b), std::min(a, b))] = weight(rng); };

    Index start = 0;
    for (int b = 0; b < k; ++b) {
        Index end = start;
        while (end < p && part[end] == b) ++end;
        std::vector<Index> nodes(static_cast<std::size_t>(end - start));
        std::iota(nodes.begin(), nodes.end(), start);
        std::shuffle(nodes.begin(), nodes.end(), rng);
        // random recursive tree: each node attaches to an earlier one
        for (std::size_t t = 1; t < nodes.size(); ++t) {
            std::uniform_int_distribution<std::size_t> pick(0, t - 1);
            add_edge(nodes[t], nodes[pick(rng)]);
        }
        for (Index j = start; j < end; ++j)
            for (Index i = j + 1; i < end; ++i)
                if (w[map.index(i, j)] == 0.0 && coin(rng)) w[map.index(i, j)] = weight(rng);
        start = end;
    }
    return finish(std::move(w), GraphStructure::KComponent, std::move(part));
}

GroundTruthGraph gen_grid(Index rows, Index cols, WeightRange weights, std::uint64_t seed) {
    if (rows < 1 || cols < 1 || rows * cols < 2) throw InvalidConfig("grid needs rows * cols >= 2");
    check_range(weights);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(weights.lo, weights.hi);
    const Index p = rows * cols;
    const EdgeIndexMap map(p);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(map.edges());
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            const Index u = r * cols + c;
            if (c + 1 < cols) w[map.index(u + 1, u)] = weight(rng);
            if (r + 1 < rows) w[map.index(u + cols, u)] = weight(rng);
        }
    return finish(std::move(w), GraphStructure::Grid, std::vector<int>(static_cast<std::size_t>(p), 0));
}

GroundTruthGraph gen_erdos_renyi(Index p, double edge_prob, WeightRange weights, std::uint64_t seed,
                                 int max_retries) {
    if (p < 2) throw InvalidConfig("p must be >= 2");
    check_prob(edge_prob, "edge_prob", false);
    check_range(weights);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(weights.lo, weights.hi);
    std::bernoulli_distribution coin(edge_prob);
    const Index m = edge_count(p);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
        for (Index e = 0; e < m; ++e)
            if (coin(rng)) w[e] = weight(rng);
        if (component_count(connected_components(w, p, 0.0)) == 1)
            return finish(std::move(w), GraphStructure::ErdosRenyi, std::vector<int>(static_cast<std::size_t>(p), 0));
    }
    throw GenerationError("no connected Erdos-Renyi graph after " + std::to_string(max_retries) + " draws");
}

GroundTruthGraph gen_modular(Index p, int blocks, double p_in, double p_out, WeightRange weights,
                             std::uint64_t seed, int max_retries) {
    if (p < 2) throw InvalidConfig("p must be >= 2");
    if (blocks < 1 || blocks > p) throw InvalidConfig("blocks must satisfy 1 <= blocks <= p");
    check_prob(p_in, "p_in", false);
    check_prob(p_out, "p_out", true);
    check_range(weights);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(weights.lo, weights.hi);
    std::bernoulli_distribution in(p_in);
    std::bernoulli_distribution out(p_out);
    const EdgeIndexMap map(p);
    std::vector<int> part = balanced_blocks(p, blocks);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(map.edges());
        for (Index j = 0; j < p; ++j)
            for (Index i = j + 1; i < p; ++i) {
                const bool edge = part[i] == part[j] ? in(rng) : out(rng);
                if (edge) w[map.index(i, j)] = weight(rng);
            }
        if (component_count(connected_components(w, p, 0.0)) == 1)
            return finish(std::move(w), GraphStructure::Modular, part);
    }
    throw GenerationError("no connected modular graph after " + std::to_string(max_retries) + " draws");
}

Eigen::MatrixXd sample_gmrf(const Eigen::MatrixXd& laplacian, Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("sample count must be >= 1");
    const SymmetricEigen eig = symmetric_eigen(laplacian);
    const Index p = laplacian.rows();
    const double cut = 1e-10 * eig.values.cwiseAbs().maxCoeff();
    std::vector<Index> keep;
    for (Index i = 0; i < p; ++i)
        if (eig.values[i] > cut) keep.push_back(i);
    const auto q = static_cast<Index>(keep.size());
    Eigen::MatrixXd factor(p, q);  // U+ Diag(lambda+^{-1/2})
    for (Index c = 0; c < q; ++c) factor.col(c) = eig.vectors.col(keep[c]) / std::sqrt(eig.values[keep[c]]);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd Z(n, q);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < q; ++c) Z(r, c) = normal(rng);
    return Z * factor.transpose();
}

Eigen::MatrixXd sample_gmrf(const GroundTruthGraph& graph, Index n, std::uint64_t seed) {
    return sample_gmrf(graph.laplacian, n, seed);
}

Eigen::MatrixXd add_noise(const Eigen::MatrixXd& X, double stddev, std::uint64_t seed) {
    if (!(stddev >= 0.0)) throw InvalidConfig("noise stddev must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd Y = X;
    for (Index r = 0; r < Y.rows(); ++r)
        for (Index c = 0; c < Y.cols(); ++c) Y(r, c) += stddev * normal(rng);
    return Y;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& X) {
    if (X.rows() < 2) throw InvalidInput("sample covariance needs at least 2 samples");
    Eigen::MatrixXd S;
    kernels::parallel::covariance(X, S);
    return S;
}

}  // namespace sgl

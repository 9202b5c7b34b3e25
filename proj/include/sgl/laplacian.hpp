#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <utility>

namespace sgl {

using Index = Eigen::Index;

/// Number of undirected edges of a p-node graph, p(p-1)/2.
constexpr Index edge_count(Index p) noexcept { return p * (p - 1) / 2; }

/// Inverse of edge_count. Throws InvalidDimension unless m = p(p-1)/2 for some p >= 2.
Index node_count_from_edges(Index m);

/// Bijection between the linear edge index and the node pair (i, j), i > j.
///
/// Edges are enumerated column by column through the strict lower triangle:
/// (1,0), (2,0), ..., (p-1,0), (2,1), ... The 1-based form of the map is
///     k = i - j + (j - 1)(2p - j) / 2
/// and the methods below expose the same ordering with 0-based indices.
class EdgeIndexMap {
public:
    explicit EdgeIndexMap(Index p);

    Index nodes() const noexcept { return p_; }
    Index edges() const noexcept { return edge_count(p_); }

    /// 0-based edge index of the pair (i, j); requires i > j.
    Index index(Index i, Index j) const noexcept {
        return i - j - 1 + j * (2 * p_ - j - 1) / 2;
    }

    /// 0-based (i, j) with i > j for a 0-based edge index.
    std::pair<Index, Index> pair(Index k) const;

    /// Same as index() but in the 1-based algebra (i, j, k all 1-based).
    static Index index_one_based(Index p, Index i, Index j) noexcept {
        return i - j + (j - 1) * (2 * p - j) / 2;
    }

private:
    Index p_;
};

/// Nonnegative edge-weight vector of a p-node graph.
class WeightVector {
public:
    WeightVector() = default;
    /// Throws InvalidDimension for a bad length and InvalidInput for a negative entry.
    explicit WeightVector(Eigen::VectorXd w);

    /// Clips negative entries to zero instead of rejecting them.
    static WeightVector clipped(const Eigen::VectorXd& w);

    const Eigen::VectorXd& values() const noexcept { return w_; }
    Index nodes() const noexcept { return p_; }
    Index size() const noexcept { return w_.size(); }
    double operator[](Index k) const { return w_[k]; }

private:
    Eigen::VectorXd w_;
    Index p_ = 0;
};

/// Laplacian operator: [Lw]_ij = -w_k for the edge k of (i, j), rows sum to zero.
Eigen::MatrixXd lap(const Eigen::VectorXd& w);
inline Eigen::MatrixXd lap(const WeightVector& w) { return lap(w.values()); }

/// Adjoint: [L*Y]_k = y_ii - y_ij - y_ji + y_jj. Y must be square with p >= 2.
Eigen::VectorXd lap_adjoint(const Eigen::MatrixXd& Y);

/// L*(Lw) evaluated without forming Lw: [L*Lw]_k = deg_i + deg_j + 2 w_k.
Eigen::VectorXd lap_adjoint_lap(const Eigen::VectorXd& w);

/// Inverse of lap on its image: k-th entry is -M_ij. Negative results are kept.
/// Throws InvalidInput if M is not symmetric to 1e-9 (relative to max |M|).
Eigen::VectorXd extract_weights(const Eigen::MatrixXd& M);

/// ||L||_2 = sqrt(2p).
double operator_norm(Index p);

/// Explicit p^2 x m matrix of the operator, column k = vec(L e_k). Test and
/// diagnostics use only; size grows as p^4.
Eigen::MatrixXd lap_matrix(Index p);

/// Product of the eigenvalues above zero_tol * max(|eigenvalue|); 1 for an empty product.
double gdet(std::span<const double> eigenvalues, double zero_tol = 1e-8);
double gdet(const Eigen::VectorXd& eigenvalues, double zero_tol = 1e-8);

}  // namespace sgl

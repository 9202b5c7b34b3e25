#include "sgl/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgl/error.hpp"
#include "sgl/kernels.hpp"

namespace sgl {

Index node_count_from_edges(Index m) {
    if (m >= 1) {
        // p = (1 + sqrt(1 + 8m)) / 2, checked exactly in integers
        auto p = static_cast<Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0));
        for (Index cand = std::max<Index>(2, p - 1); cand <= p + 1; ++cand)
            if (edge_count(cand) == m) return cand;
    }
    throw InvalidDimension("weight vector length " + std::to_string(m) + " is not p(p-1)/2 for any p >= 2");
}

EdgeIndexMap::EdgeIndexMap(Index p) : p_(p) {
    if (p < 2) throw InvalidDimension("node count must be >= 2, got " + std::to_string(p));
}

std::pair<Index, Index> EdgeIndexMap::pair(Index k) const {
    if (k < 0 || k >= edges()) throw InvalidDimension("edge index " + std::to_string(k) + " out of range");
    Index j = 0;
    Index first = 0;
    while (first + (p_ - j - 1) <= k) {
        first += p_ - j - 1;
        ++j;
    }
    return {j + 1 + (k - first), j};
}

WeightVector::WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {
    p_ = node_count_from_edges(w_.size());
    for (Index k = 0; k < w_.size(); ++k)
        if (!(w_[k] >= 0.0))
            throw InvalidInput("edge weight " + std::to_string(k) + " is negative or NaN");
}

WeightVector WeightVector::clipped(const Eigen::VectorXd& w) {
    return WeightVector(w.cwiseMax(0.0));
}

Eigen::MatrixXd lap(const Eigen::VectorXd& w) {
    const Index p = node_count_from_edges(w.size());
    Eigen::MatrixXd out;
    kernels::parallel::lap(w, p, out);
    return out;
}

Eigen::VectorXd lap_adjoint(const Eigen::MatrixXd& Y) {
    if (Y.rows() != Y.cols()) throw InvalidDimension("adjoint input must be square");
    if (Y.rows() < 2) throw InvalidDimension("adjoint input must be at least 2x2");
    Eigen::VectorXd out;
    kernels::parallel::lap_adjoint(Y, out);
    return out;
}

Eigen::VectorXd lap_adjoint_lap(const Eigen::VectorXd& w) {
    const Index p = node_count_from_edges(w.size());
    Eigen::VectorXd out;
    kernels::parallel::lap_adjoint_lap(w, p, out);
    return out;
}

Eigen::VectorXd extract_weights(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw InvalidDimension("matrix must be square");
    if (M.rows() < 2) throw InvalidDimension("matrix must be at least 2x2");
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw InvalidInput("matrix is not symmetric");
    const Index p = M.rows();
    Eigen::VectorXd w(edge_count(p));
    Index k = 0;
    for (Index j = 0; j < p; ++j)
        for (Index i = j + 1; i < p; ++i) w[k++] = -M(i, j);
    return w;
}

double operator_norm(Index p) {
    if (p < 2) throw InvalidDimension("node count must be >= 2, got " + std::to_string(p));
    return std::sqrt(2.0 * static_cast<double>(p));
}

Eigen::MatrixXd lap_matrix(Index p) {
    const EdgeIndexMap map(p);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p * p, map.edges());
    for (Index k = 0; k < map.edges(); ++k) {
        const auto [i, j] = map.pair(k);
        // column-major vec: entry (r, c) sits at r + c * p
        A(i + i * p, k) = 1.0;
        A(j + j * p, k) = 1.0;
        A(i + j * p, k) = -1.0;
        A(j + i * p, k) = -1.0;
    }
    return A;
}

double gdet(std::span<const double> eigenvalues, double zero_tol) {
    double largest = 0.0;
    for (double v : eigenvalues) largest = std::max(largest, std::abs(v));
    const double cut = zero_tol * largest;
    double prod = 1.0;
    for (double v : eigenvalues)
        if (v > cut) prod *= v;
    return prod;
}

double gdet(const Eigen::VectorXd& eigenvalues, double zero_tol) {
    return gdet(std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())),
                zero_tol);
}

}  // namespace sgl

#include "sgl/linalg.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "sgl/error.hpp"
#include "sgl/laplacian.hpp"

namespace sgl {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw InvalidDimension("eigendecomposition needs a square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "symmetric eigendecomposition failed: n=" << A.rows() << " finite=" << A.allFinite()
            << " max|a|=" << (A.size() ? A.cwiseAbs().maxCoeff() : 0.0)
            << " asym=" << (A.size() ? (A - A.transpose()).cwiseAbs().maxCoeff() : 0.0);
        throw NumericalError(msg.str());
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol) {
    const SymmetricEigen eig = symmetric_eigen(A);
    const double cut = rel_tol * eig.values.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv(eig.values.size());
    for (Eigen::Index i = 0; i < inv.size(); ++i)
        inv[i] = std::abs(eig.values[i]) > cut ? 1.0 / eig.values[i] : 0.0;
    return eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
}

std::vector<int> connected_components(const Eigen::VectorXd& w, Eigen::Index p, double threshold) {
    const EdgeIndexMap map(p);
    if (w.size() != map.edges()) throw InvalidDimension("weight vector does not match node count");
    std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(p));
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        if (w[k] > threshold) {
            const auto [i, j] = map.pair(k);
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    std::vector<int> label(static_cast<std::size_t>(p), -1);
    int next = 0;
    for (Eigen::Index s = 0; s < p; ++s) {
        if (label[s] >= 0) continue;
        std::queue<Eigen::Index> frontier;
        frontier.push(s);
        label[s] = next;
        while (!frontier.empty()) {
            const Eigen::Index u = frontier.front();
            frontier.pop();
            for (Eigen::Index v : adj[u])
                if (label[v] < 0) {
                    label[v] = next;
                    frontier.push(v);
                }
        }
        ++next;
    }
    return label;
}

int component_count(const std::vector<int>& labels) {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace sgl

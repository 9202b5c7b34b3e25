#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sgl {

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // column i pairs with values[i]
};

/// Full eigendecomposition of a symmetric matrix. Throws NumericalError on failure.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A);

/// Moore-Penrose pseudo-inverse of a symmetric matrix; eigenvalues with
/// |v| <= rel_tol * max|v| are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol = 1e-10);

/// Connected components of the graph whose edge k is present iff w_k > threshold.
/// Labels are 0..c-1 in order of each component's smallest node.
std::vector<int> connected_components(const Eigen::VectorXd& w, Eigen::Index p, double threshold);

int component_count(const std::vector<int>& labels);

}  // namespace sgl

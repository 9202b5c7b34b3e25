#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sgl/laplacian.hpp"

namespace sgl {

struct EdgeCounts {
    Index tp = 0;
    Index fp = 0;
    Index fn = 0;
    Index tn = 0;
};

struct EvalReport {
    double relative_error = 0.0;
    double fscore = 0.0;
    std::optional<double> accuracy;
    EdgeCounts edge_counts;
};

/// ||estimated - truth||_F / ||truth||_F. Throws UndefinedMetric if truth is zero.
double relative_error(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth);

/// Support confusion counts; an edge is present iff its weight exceeds edge_tol.
EdgeCounts edge_confusion(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth, double edge_tol);

/// 2tp / (2tp + fp + fn); 1 when both supports are empty.
double fscore(const EdgeCounts& counts);
double fscore(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth, double edge_tol);
inline double fscore(const WeightVector& estimated, const WeightVector& truth, double edge_tol) {
    return fscore(estimated.values(), truth.values(), edge_tol);
}

/// Default support threshold: 1e-4 times the largest true weight.
double default_edge_tol(const Eigen::VectorXd& truth);

/// Fraction of points matched under the best one-to-one mapping of predicted
/// labels onto true labels. Exhaustive search up to 8 labels, Hungarian above.
double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Maximum-weight perfect assignment on a square matrix; returns row -> column.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights);

EvalReport evaluate(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth,
                    const std::vector<int>* predicted_labels = nullptr,
                    const std::vector<int>* true_labels = nullptr);

}  // namespace sgl

#include "sgl/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "sgl/error.hpp"

namespace sgl {

double relative_error(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& truth) {
    if (estimated.rows() != truth.rows() || estimated.cols() != truth.cols())
        throw InvalidDimension("relative error needs matrices of equal shape");
    const double denom = truth.norm();
    if (denom == 0.0) throw UndefinedMetric("relative error undefined for a zero reference matrix");
    return (estimated - truth).norm() / denom;
}

EdgeCounts edge_confusion(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth, double edge_tol) {
    if (estimated.size() != truth.size()) throw InvalidDimension("weight vectors differ in length");
    EdgeCounts c;
    for (Index k = 0; k < truth.size(); ++k) {
        const bool e = estimated[k] > edge_tol;
        const bool t = truth[k] > edge_tol;
        if (e && t) ++c.tp;
        else if (e) ++c.fp;
        else if (t) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double fscore(const EdgeCounts& c) {
    const Index denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) return 1.0;
    return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double fscore(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth, double edge_tol) {
    return fscore(edge_confusion(estimated, truth, edge_tol));
}

double default_edge_tol(const Eigen::VectorXd& truth) {
    return truth.size() ? 1e-4 * std::max(0.0, truth.maxCoeff()) : 0.0;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights) {
    // Hungarian algorithm (potentials, O(n^3)) on cost = -weights.
    const int n = static_cast<int>(weights.rows());
    if (weights.cols() != n) throw InvalidDimension("assignment needs a square matrix");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n);
    for (int j = 1; j <= n; ++j)
        if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw InvalidInput("label vectors differ in length");
    if (truth.empty()) throw InvalidInput("label vectors are empty");

    auto dense = [](const std::vector<int>& labels) {
        std::map<int, int> ids;
        std::vector<int> out(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto it = ids.try_emplace(labels[i], static_cast<int>(ids.size())).first;
            out[i] = it->second;
        }
        return std::pair{out, static_cast<int>(ids.size())};
    };
    const auto [pred, np] = dense(predicted);
    const auto [tru, nt] = dense(truth);
    const int n = std::max(np, nt);

    Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < pred.size(); ++i) overlap(pred[i], tru[i]) += 1.0;

    double best = 0.0;
    if (n <= 8) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double s = 0.0;
            for (int r = 0; r < n; ++r) s += overlap(r, perm[r]);
            best = std::max(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        const std::vector<int> assign = max_weight_assignment(overlap);
        for (int r = 0; r < n; ++r) best += overlap(r, assign[r]);
    }
    return best / static_cast<double>(truth.size());
}

EvalReport evaluate(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth,
                    const std::vector<int>* predicted_labels, const std::vector<int>* true_labels) {
    if (estimated.size() != truth.size()) throw InvalidDimension("estimated and true graphs differ in size");
    EvalReport r;
    r.relative_error = relative_error(lap(estimated), lap(truth));
    r.edge_counts = edge_confusion(estimated, truth, default_edge_tol(truth));
    r.fscore = fscore(r.edge_counts);
    if (predicted_labels && true_labels) r.accuracy = clustering_accuracy(*predicted_labels, *true_labels);
    return r;
}

}  // namespace sgl

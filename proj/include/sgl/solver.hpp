#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sgl/laplacian.hpp"

namespace sgl {

/// Spectral constraint family imposed on the learned Laplacian.
struct SpectralConstraint {
    enum class Kind { KComponent, SparseConnected, Cospectral };

    Kind kind = Kind::SparseConnected;
    /// Number of zero eigenvalues (connected components).
    int k = 1;
    /// Box on the nonzero eigenvalues. Unset bounds get data-driven defaults
    /// at initialization (see initialize()).
    std::optional<double> c1;
    std::optional<double> c2;
    /// Cospectral only: target spectrum, nondecreasing and nonnegative. Either
    /// the full spectrum of length p (its zeros fix k) or only the p - k
    /// nonzero eigenvalues.
    Eigen::VectorXd fixed_spectrum;

    static SpectralConstraint k_component(int k, std::optional<double> c1 = {}, std::optional<double> c2 = {});
    static SpectralConstraint sparse_connected(std::optional<double> c1 = {}, std::optional<double> c2 = {});
    static SpectralConstraint cospectral(Eigen::VectorXd spectrum);

    /// Throws InvalidConfig when the constraint cannot apply to a p-node graph.
    void validate(Index p) const;
    /// Zero-eigenvalue count for a p-node graph (resolves the cospectral case).
    int zero_count(Index p) const;
    /// Nonzero part of fixed_spectrum for a p-node graph.
    Eigen::VectorXd nonzero_spectrum(Index p) const;
};

std::string to_string(SpectralConstraint::Kind kind);
SpectralConstraint::Kind constraint_kind_from_string(const std::string& name);

struct SglConfig {
    double alpha = 0.0;
    double beta0 = 1.0;
    double beta_growth = 1.5;
    int beta_update_every = 50;
    double beta_max = 1e6;
    int max_iter = 10000;
    double rel_tol = 1e-5;
    SpectralConstraint constraint;

    void validate() const;
};

/// Iterate of the three-block solver.
struct SolverState {
    Index p = 0;
    int k = 1;
    Eigen::VectorXd w;       // edge weights, >= 0
    Eigen::MatrixXd U;       // p x q, orthonormal columns
    Eigen::VectorXd lambda;  // q, nondecreasing in [c1, c2]
    Eigen::MatrixXd K;       // S + H
    double c1 = 0.0;
    double c2 = 0.0;
    double beta = 1.0;
    int iter = 0;
    std::vector<double> objective_trace;
    std::vector<double> beta_trace;  // beta in force for each objective_trace entry

    Index q() const noexcept { return p - k; }
};

struct LearnedGraph {
    Eigen::MatrixXd laplacian;
    WeightVector weights;
    Eigen::VectorXd eigenvalues;  // full spectrum of the final Laplacian, ascending
    std::vector<int> component_labels;
    bool converged = false;
    int iterations = 0;
    double final_objective = 0.0;
    std::vector<double> objective_trace;
    std::vector<double> beta_trace;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Relative threshold (times max weight) above which an edge counts as present.
inline constexpr double kEdgeThreshold = 1e-4;

/// K = S + alpha (2I - 11^T). Throws InvalidInput if S is not symmetric.
Eigen::MatrixXd build_k(const Eigen::MatrixXd& S, double alpha);

/// -sum log lambda + tr(K Lw) + beta/2 ||Lw - U Diag(lambda) U^T||_F^2.
/// Throws DomainError if any lambda <= 0.
double objective(const SolverState& state);

/// Gradient of f(w) = 1/2 ||Lw||^2 - c^T w with c = L*(U Diag(lambda) U^T - K / beta).
Eigen::VectorXd w_gradient(const SolverState& state);

/// One majorization-minimization step: (w - grad / (2p))^+.
Eigen::VectorXd w_update(const SolverState& state);

/// Eigenvectors of Lw for eigenvalue positions k..p-1 (ascending order).
Eigen::MatrixXd u_update(const SolverState& state);

/// Minimizer of -sum log lambda_i + beta/2 ||lambda - d||^2 subject to
/// c1 <= lambda_1 <= ... <= lambda_q <= c2. Throws InvalidConfig if c1 > c2
/// or beta <= 0.
Eigen::VectorXd solve_lambda(const Eigen::VectorXd& d, double beta, double c1, double c2);

/// solve_lambda with d = diag(U^T Lw U) taken from the state.
Eigen::VectorXd lambda_update(const SolverState& state);

/// Starting point: w from the clipped pseudo-inverse of S (uniform 1/p if that is
/// all zero), U and lambda fitted to Lw. Resolves default eigenvalue bounds.
SolverState initialize(const Eigen::MatrixXd& S, const SglConfig& config);

/// Snapshot of a state as a LearnedGraph.
LearnedGraph to_learned_graph(const SolverState& state, bool converged);

/// Runs the w -> U -> lambda block cycle until both the relative change of w
/// (inf-norm, scaled by 1 + ||w||_inf) and the relative objective change fall
/// below rel_tol, or max_iter is reached.
LearnedGraph run(const Eigen::MatrixXd& S, const SglConfig& config);

}  // namespace sgl

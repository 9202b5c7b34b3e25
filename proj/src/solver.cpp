#include "sgl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgl/error.hpp"
#include "sgl/kernels.hpp"
#include "sgl/linalg.hpp"

namespace sgl {

// ---------------------------------------------------------------------------
// Constraint and configuration
// ---------------------------------------------------------------------------

SpectralConstraint SpectralConstraint::k_component(int k, std::optional<double> c1, std::optional<double> c2) {
    SpectralConstraint c;
    c.kind = Kind::KComponent;
    c.k = k;
    c.c1 = c1;
    c.c2 = c2;
    return c;
}

SpectralConstraint SpectralConstraint::sparse_connected(std::optional<double> c1, std::optional<double> c2) {
    SpectralConstraint c = k_component(1, c1, c2);
    c.kind = Kind::SparseConnected;
    return c;
}

SpectralConstraint SpectralConstraint::cospectral(Eigen::VectorXd spectrum) {
    SpectralConstraint c;
    c.kind = Kind::Cospectral;
    c.fixed_spectrum = std::move(spectrum);
    return c;
}

namespace {

// Entries of a target spectrum at or below this (relative to its largest
// entry) count as structural zeros.
constexpr double kSpectrumZeroTol = 1e-8;

Index spectrum_zero_count(const Eigen::VectorXd& s) {
    if (s.size() == 0) return 0;
    const double cut = kSpectrumZeroTol * s.maxCoeff();
    return static_cast<Index>((s.array() <= cut).count());
}

}  // namespace

int SpectralConstraint::zero_count(Index p) const {
    if (kind == Kind::SparseConnected) return 1;
    if (kind == Kind::KComponent) return k;
    if (fixed_spectrum.size() == p) return static_cast<int>(spectrum_zero_count(fixed_spectrum));
    return static_cast<int>(p - fixed_spectrum.size());
}

Eigen::VectorXd SpectralConstraint::nonzero_spectrum(Index p) const {
    const Index zeros = fixed_spectrum.size() == p ? spectrum_zero_count(fixed_spectrum) : 0;
    return fixed_spectrum.tail(fixed_spectrum.size() - zeros);
}

void SpectralConstraint::validate(Index p) const {
    if (p < 2) throw InvalidConfig("graph must have at least 2 nodes");
    if (c1 && !(*c1 > 0.0)) throw InvalidConfig("c1 must be positive");
    if (c2 && !(*c2 > 0.0)) throw InvalidConfig("c2 must be positive");
    if (c1 && c2 && *c1 > *c2) throw InvalidConfig("c1 must not exceed c2");
    switch (kind) {
    case Kind::SparseConnected:
        if (k != 1) throw InvalidConfig("sparse-connected constraint requires k = 1");
        break;
    case Kind::KComponent:
        if (k < 1 || k >= p)
            throw InvalidConfig("k must satisfy 1 <= k <= p-1 (k=" + std::to_string(k) + ", p=" +
                                std::to_string(p) + ")");
        break;
    case Kind::Cospectral: {
        const Index n = fixed_spectrum.size();
        if (n == 0 || n > p) throw InvalidConfig("fixed spectrum must have between 1 and p entries");
        for (Index i = 0; i < n; ++i) {
            if (!(fixed_spectrum[i] >= 0.0)) throw InvalidConfig("fixed spectrum must be nonnegative");
            if (i > 0 && fixed_spectrum[i] < fixed_spectrum[i - 1])
                throw InvalidConfig("fixed spectrum must be nondecreasing");
        }
        const int zeros = zero_count(p);
        if (zeros < 1) throw InvalidConfig("a Laplacian spectrum has at least one zero eigenvalue");
        if (zeros >= p) throw InvalidConfig("fixed spectrum has no nonzero eigenvalue");
        if (n < p && spectrum_zero_count(fixed_spectrum) > 0)
            throw InvalidConfig("a partial fixed spectrum must list only nonzero eigenvalues");
        break;
    }
    }
}

std::string to_string(SpectralConstraint::Kind kind) {
    switch (kind) {
    case SpectralConstraint::Kind::KComponent: return "k-component";
    case SpectralConstraint::Kind::SparseConnected: return "sparse-connected";
    case SpectralConstraint::Kind::Cospectral: return "cospectral";
    }
    return "unknown";
}

SpectralConstraint::Kind constraint_kind_from_string(const std::string& name) {
    if (name == "k-component") return SpectralConstraint::Kind::KComponent;
    if (name == "sparse-connected") return SpectralConstraint::Kind::SparseConnected;
    if (name == "cospectral") return SpectralConstraint::Kind::Cospectral;
    throw InvalidConfig("unknown constraint kind '" + name + "'");
}

void SglConfig::validate() const {
    if (!(alpha >= 0.0)) throw InvalidConfig("alpha must be >= 0");
    if (!(beta0 > 0.0)) throw InvalidConfig("beta0 must be > 0");
    if (!(beta_growth >= 1.0)) throw InvalidConfig("beta_growth must be >= 1");
    if (beta_update_every < 1) throw InvalidConfig("beta_update_every must be >= 1");
    if (!(beta_max >= beta0)) throw InvalidConfig("beta_max must be >= beta0");
    if (max_iter < 0) throw InvalidConfig("max_iter must be >= 0");
    if (!(rel_tol > 0.0)) throw InvalidConfig("rel_tol must be > 0");
}

// ---------------------------------------------------------------------------
// Block updates
// ---------------------------------------------------------------------------

Eigen::MatrixXd build_k(const Eigen::MatrixXd& S, double alpha) {
    if (S.rows() != S.cols()) throw InvalidDimension("covariance must be square");
    const double scale = std::max(1.0, S.size() ? S.cwiseAbs().maxCoeff() : 0.0);
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw InvalidInput("covariance is not symmetric");
    const Index p = S.rows();
    Eigen::MatrixXd H = Eigen::MatrixXd::Constant(p, p, -alpha);
    H.diagonal().array() += 2.0 * alpha;
    return S + H;
}

double objective(const SolverState& state) {
    double log_term = 0.0;
    for (Index i = 0; i < state.lambda.size(); ++i) {
        if (!(state.lambda[i] > 0.0))
            throw DomainError("objective undefined: eigenvalue " + std::to_string(i) + " is not positive");
        log_term -= std::log(state.lambda[i]);
    }
    const Eigen::MatrixXd Lw = lap(state.w);
    const Eigen::MatrixXd target = state.U * state.lambda.asDiagonal() * state.U.transpose();
    return log_term + (state.K.cwiseProduct(Lw)).sum() + 0.5 * state.beta * (Lw - target).squaredNorm();
}

Eigen::VectorXd w_gradient(const SolverState& state) {
    Eigen::MatrixXd Y;
    kernels::parallel::spectral_target(state.U, state.lambda, state.K, state.beta, Y);
    Eigen::VectorXd c;
    kernels::parallel::lap_adjoint(Y, c);
    Eigen::VectorXd grad;
    kernels::parallel::lap_adjoint_lap(state.w, state.p, grad);
    return grad - c;
}

Eigen::VectorXd w_update(const SolverState& state) {
    const double step = 1.0 / (2.0 * static_cast<double>(state.p));
    return (state.w - step * w_gradient(state)).cwiseMax(0.0);
}

Eigen::MatrixXd u_update(const SolverState& state) {
    const SymmetricEigen eig = symmetric_eigen(lap(state.w));
    return eig.vectors.rightCols(state.q());
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

SolverState initialize(const Eigen::MatrixXd& S, const SglConfig& config) {
    config.validate();
    if (S.rows() != S.cols()) throw InvalidDimension("covariance must be square");
    const Index p = S.rows();
    config.constraint.validate(p);

    SolverState state;
    state.p = p;
    state.k = config.constraint.zero_count(p);
    state.K = build_k(S, config.alpha);
    state.beta = config.beta0;

    Eigen::MatrixXd P = pseudo_inverse(S);
    P = 0.5 * (P + P.transpose());
    state.w = extract_weights(P).cwiseMax(0.0);
    if (state.w.maxCoeff() <= 0.0) state.w.setConstant(1.0 / static_cast<double>(p));

    const SymmetricEigen eig = symmetric_eigen(lap(state.w));
    state.U = eig.vectors.rightCols(state.q());

    const auto& constraint = config.constraint;
    if (constraint.kind == SpectralConstraint::Kind::Cospectral) {
        state.lambda = constraint.nonzero_spectrum(p);
        state.c1 = state.lambda.minCoeff();
        state.c2 = state.lambda.maxCoeff();
    } else {
        const double top = eig.values.maxCoeff();
        double sum = 0.0;
        int count = 0;
        for (Index i = 0; i < p; ++i)
            if (eig.values[i] > 1e-8 * top) {
                sum += eig.values[i];
                ++count;
            }
        const double mean_positive = count > 0 ? sum / count : 1.0;
        state.c1 = constraint.c1.value_or(1e-2 * mean_positive);
        state.c2 = constraint.c2.value_or(1e6);
        if (state.c1 > state.c2) throw InvalidConfig("resolved c1 exceeds c2");
        state.lambda = solve_lambda(eig.values.tail(state.q()), state.beta, state.c1, state.c2);
    }

    state.objective_trace.push_back(objective(state));
    state.beta_trace.push_back(state.beta);
    return state;
}

LearnedGraph to_learned_graph(const SolverState& state, bool converged) {
    LearnedGraph g;
    g.laplacian = lap(state.w);
    g.weights = WeightVector(state.w);
    g.eigenvalues = symmetric_eigen(g.laplacian).values;
    const double wmax = state.w.size() ? state.w.maxCoeff() : 0.0;
    g.component_labels = connected_components(state.w, state.p, kEdgeThreshold * wmax);
    g.converged = converged;
    g.iterations = state.iter;
    g.final_objective = state.objective_trace.empty() ? objective(state) : state.objective_trace.back();
    g.objective_trace = state.objective_trace;
    g.beta_trace = state.beta_trace;
    g.c1 = state.c1;
    g.c2 = state.c2;
    return g;
}

LearnedGraph run(const Eigen::MatrixXd& S, const SglConfig& config) {
    SolverState state = initialize(S, config);
    const bool fixed_spectrum = config.constraint.kind == SpectralConstraint::Kind::Cospectral;
    bool converged = false;
    double previous = state.objective_trace.back();

    for (int it = 0; it < config.max_iter; ++it) {
        if (it > 0 && it % config.beta_update_every == 0 && config.beta_growth > 1.0 &&
            state.beta < config.beta_max) {
            state.beta = std::min(state.beta * config.beta_growth, config.beta_max);
            previous = objective(state);
        }

        const Eigen::VectorXd w_old = state.w;
        state.w = w_update(state);
        state.U = u_update(state);
        if (!fixed_spectrum) state.lambda = lambda_update(state);
        ++state.iter;

        const double current = objective(state);
        state.objective_trace.push_back(current);
        state.beta_trace.push_back(state.beta);

        const double w_change = (state.w - w_old).lpNorm<Eigen::Infinity>() /
                                (1.0 + w_old.lpNorm<Eigen::Infinity>());
        const double f_change = std::abs(current - previous) / (1.0 + std::abs(previous));
        previous = current;
        if (w_change < config.rel_tol && f_change < config.rel_tol) {
            converged = true;
            break;
        }
    }
    return to_learned_graph(state, converged);
}

}  // namespace sgl

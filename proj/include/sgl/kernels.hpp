#pragma once

// Data-parallel inner loops of the solver. Each kernel exists twice: a plain
// serial reference and an OpenMP version. Every output entry of the OpenMP
// version is accumulated by a single thread in the same order as the serial
// one, so the two agree bit for bit for any thread count.

#include <Eigen/Dense>

namespace sgl::kernels {

namespace serial {

void lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::MatrixXd& out);
void lap_adjoint(const Eigen::MatrixXd& Y, Eigen::VectorXd& out);
void lap_adjoint_lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::VectorXd& out);
// U Diag(lambda) U^T - K / beta
void spectral_target(const Eigen::MatrixXd& U, const Eigen::VectorXd& lambda,
                     const Eigen::MatrixXd& K, double beta, Eigen::MatrixXd& out);
// (1/n) Xc^T Xc with column means removed; X is n x p.
void covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& out);

}  // namespace serial

namespace parallel {

void lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::MatrixXd& out);
void lap_adjoint(const Eigen::MatrixXd& Y, Eigen::VectorXd& out);
void lap_adjoint_lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::VectorXd& out);
void spectral_target(const Eigen::MatrixXd& U, const Eigen::VectorXd& lambda,
                     const Eigen::MatrixXd& K, double beta, Eigen::MatrixXd& out);
void covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& out);

}  // namespace parallel

/// Upper bound on OpenMP threads used by the parallel kernels (0 = runtime default).
void set_max_threads(int n);
int max_threads();

}  // namespace sgl::kernels

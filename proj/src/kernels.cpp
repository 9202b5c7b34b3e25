#include "sgl/kernels.hpp"

#include <omp.h>

namespace sgl::kernels {

namespace {

// First edge index of column j (0-based), i.e. index(j + 1, j).
inline Eigen::Index column_offset(Eigen::Index p, Eigen::Index j) {
    return j * (2 * p - j - 1) / 2;
}

// Degree of node i: sum of the weights of all edges touching i, summed in
// increasing order of the other endpoint.
inline double degree(const Eigen::VectorXd& w, Eigen::Index p, Eigen::Index i) {
    double d = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) d += w[column_offset(p, j) + (i - j - 1)];
    const Eigen::Index off = column_offset(p, i);
    for (Eigen::Index l = i + 1; l < p; ++l) d += w[off + (l - i - 1)];
    return d;
}

inline double quad_entry(const Eigen::MatrixXd& U, const Eigen::VectorXd& lambda,
                         Eigen::Index i, Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index l = 0; l < U.cols(); ++l) s += U(i, l) * lambda[l] * U(j, l);
    return s;
}

}  // namespace

namespace serial {

void lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::MatrixXd& out) {
    out.setZero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::Index off = column_offset(p, j);
        for (Eigen::Index i = j + 1; i < p; ++i) {
            out(i, j) = -w[off + (i - j - 1)];
            out(j, i) = out(i, j);
        }
    }
    for (Eigen::Index i = 0; i < p; ++i) out(i, i) = degree(w, p, i);
}

void lap_adjoint(const Eigen::MatrixXd& Y, Eigen::VectorXd& out) {
    const Eigen::Index p = Y.rows();
    out.resize(p * (p - 1) / 2);
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::Index off = column_offset(p, j);
        for (Eigen::Index i = j + 1; i < p; ++i)
            out[off + (i - j - 1)] = Y(i, i) - Y(i, j) - Y(j, i) + Y(j, j);
    }
}

void lap_adjoint_lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::VectorXd& out) {
    Eigen::VectorXd deg(p);
    for (Eigen::Index i = 0; i < p; ++i) deg[i] = degree(w, p, i);
    out.resize(w.size());
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::Index off = column_offset(p, j);
        for (Eigen::Index i = j + 1; i < p; ++i) {
            const Eigen::Index k = off + (i - j - 1);
            out[k] = deg[i] + deg[j] + 2.0 * w[k];
        }
    }
}

void spectral_target(const Eigen::MatrixXd& U, const Eigen::VectorXd& lambda,
                     const Eigen::MatrixXd& K, double beta, Eigen::MatrixXd& out) {
    const Eigen::Index p = U.rows();
    out.resize(p, p);
    const double inv_beta = 1.0 / beta;
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = j; i < p; ++i) {
            const double q = quad_entry(U, lambda, i, j);
            out(i, j) = q - inv_beta * K(i, j);
            out(j, i) = q - inv_beta * K(j, i);
        }
}

void covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& out) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    Eigen::VectorXd mean(p);
    for (Eigen::Index c = 0; c < p; ++c) {
        double s = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) s += X(r, c);
        mean[c] = s / static_cast<double>(n);
    }
    out.resize(p, p);
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = a; b < p; ++b) {
            double s = 0.0;
            for (Eigen::Index r = 0; r < n; ++r) s += (X(r, a) - mean[a]) * (X(r, b) - mean[b]);
            out(a, b) = s / static_cast<double>(n);
            out(b, a) = out(a, b);
        }
}

}  // namespace serial

namespace parallel {

void lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::MatrixXd& out) {
    out.resize(p, p);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) out(i, j) = -w[column_offset(p, j) + (i - j - 1)];
        const Eigen::Index off = column_offset(p, i);
        for (Eigen::Index l = i + 1; l < p; ++l) out(i, l) = -w[off + (l - i - 1)];
        out(i, i) = degree(w, p, i);
    }
}

void lap_adjoint(const Eigen::MatrixXd& Y, Eigen::VectorXd& out) {
    const Eigen::Index p = Y.rows();
    out.resize(p * (p - 1) / 2);
#pragma omp parallel for schedule(dynamic, 8) num_threads(max_threads())
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::Index off = column_offset(p, j);
        for (Eigen::Index i = j + 1; i < p; ++i)
            out[off + (i - j - 1)] = Y(i, i) - Y(i, j) - Y(j, i) + Y(j, j);
    }
}

void lap_adjoint_lap(const Eigen::VectorXd& w, Eigen::Index p, Eigen::VectorXd& out) {
    Eigen::VectorXd deg(p);
    out.resize(w.size());
#pragma omp parallel num_threads(max_threads())
    {
#pragma omp for schedule(static)
        for (Eigen::Index i = 0; i < p; ++i) deg[i] = degree(w, p, i);
#pragma omp for schedule(dynamic, 8)
        for (Eigen::Index j = 0; j < p; ++j) {
            const Eigen::Index off = column_offset(p, j);
            for (Eigen::Index i = j + 1; i < p; ++i) {
                const Eigen::Index k = off + (i - j - 1);
                out[k] = deg[i] + deg[j] + 2.0 * w[k];
            }
        }
    }
}

void spectral_target(const Eigen::MatrixXd& U, const Eigen::VectorXd& lambda,
                     const Eigen::MatrixXd& K, double beta, Eigen::MatrixXd& out) {
    const Eigen::Index p = U.rows();
    out.resize(p, p);
    const double inv_beta = 1.0 / beta;
#pragma omp parallel for schedule(dynamic, 4) num_threads(max_threads())
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = j; i < p; ++i) {
            const double q = quad_entry(U, lambda, i, j);
            out(i, j) = q - inv_beta * K(i, j);
            out(j, i) = q - inv_beta * K(j, i);
        }
}

void covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& out) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    Eigen::VectorXd mean(p);
    out.resize(p, p);
#pragma omp parallel num_threads(max_threads())
    {
#pragma omp for schedule(static)
        for (Eigen::Index c = 0; c < p; ++c) {
            double s = 0.0;
            for (Eigen::Index r = 0; r < n; ++r) s += X(r, c);
            mean[c] = s / static_cast<double>(n);
        }
#pragma omp for schedule(dynamic, 1)
        for (Eigen::Index a = 0; a < p; ++a)
            for (Eigen::Index b = a; b < p; ++b) {
                double s = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) s += (X(r, a) - mean[a]) * (X(r, b) - mean[b]);
                out(a, b) = s / static_cast<double>(n);
                out(b, a) = out(a, b);
            }
    }
}

}  // namespace parallel

namespace {
int g_max_threads = 0;
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }

int max_threads() { return g_max_threads > 0 ? g_max_threads : omp_get_max_threads(); }

}  // namespace sgl::kernels

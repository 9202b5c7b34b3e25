// Serial vs OpenMP kernels. Run with SGL_THREADS=n to cap the parallel variants.

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <random>

#include "sgl/kernels.hpp"
#include "sgl/laplacian.hpp"

namespace {

using sgl::Index;
namespace kernels = sgl::kernels;

Eigen::VectorXd random_vector(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

Eigen::MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
    return Eigen::Map<const Eigen::MatrixXd>(random_vector(rows * cols, seed).data(), rows, cols);
}

template <bool Parallel>
void BM_Lap(benchmark::State& state) {
    const Index p = state.range(0);
    const Eigen::VectorXd w = random_vector(sgl::edge_count(p), 1);
    Eigen::MatrixXd out;
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::lap(w, p, out);
        else kernels::serial::lap(w, p, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_LapAdjoint(benchmark::State& state) {
    const Index p = state.range(0);
    const Eigen::MatrixXd Y = random_matrix(p, p, 2);
    Eigen::VectorXd out;
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::lap_adjoint(Y, out);
        else kernels::serial::lap_adjoint(Y, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_LapAdjointLap(benchmark::State& state) {
    const Index p = state.range(0);
    const Eigen::VectorXd w = random_vector(sgl::edge_count(p), 3);
    Eigen::VectorXd out;
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::lap_adjoint_lap(w, p, out);
        else kernels::serial::lap_adjoint_lap(w, p, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_SpectralTarget(benchmark::State& state) {
    const Index p = state.range(0);
    const Index q = p - 4;
    const Eigen::MatrixXd U = random_matrix(p, q, 4);
    const Eigen::VectorXd lambda = random_vector(q, 5);
    const Eigen::MatrixXd K = random_matrix(p, p, 6);
    Eigen::MatrixXd out;
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::spectral_target(U, lambda, K, 10.0, out);
        else kernels::serial::spectral_target(U, lambda, K, 10.0, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_Covariance(benchmark::State& state) {
    const Index p = state.range(0);
    const Eigen::MatrixXd X = random_matrix(10 * p, p, 7);
    Eigen::MatrixXd out;
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::covariance(X, out);
        else kernels::serial::covariance(X, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int p : {16, 64, 256}) b->Arg(p);
}

}  // namespace

BENCHMARK(BM_Lap<false>)->Name("lap/serial")->Apply(sizes);
BENCHMARK(BM_Lap<true>)->Name("lap/parallel")->Apply(sizes);
BENCHMARK(BM_LapAdjoint<false>)->Name("lap_adjoint/serial")->Apply(sizes);
BENCHMARK(BM_LapAdjoint<true>)->Name("lap_adjoint/parallel")->Apply(sizes);
BENCHMARK(BM_LapAdjointLap<false>)->Name("lap_adjoint_lap/serial")->Apply(sizes);
BENCHMARK(BM_LapAdjointLap<true>)->Name("lap_adjoint_lap/parallel")->Apply(sizes);
BENCHMARK(BM_SpectralTarget<false>)->Name("spectral_target/serial")->Apply(sizes);
BENCHMARK(BM_SpectralTarget<true>)->Name("spectral_target/parallel")->Apply(sizes);
BENCHMARK(BM_Covariance<false>)->Name("covariance/serial")->Apply(sizes);
BENCHMARK(BM_Covariance<true>)->Name("covariance/parallel")->Apply(sizes);

int main(int argc, char** argv) {
    if (const char* t = std::getenv("SGL_THREADS")) kernels::set_max_threads(std::atoi(t));
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}

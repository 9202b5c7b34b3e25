// sgl: learn structured graph Laplacians from data.
//
//   sgl generate --structure k-component --p 32 --k 4 --n 3200 --seed 7
//   sgl learn graph_data.csv --k 4 --out learned
//   sgl eval --learned learned.json --truth graph.json
//   sgl export --graph learned.json --out learned.dot

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "sgl/error.hpp"
#include "sgl/io.hpp"
#include "sgl/kernels.hpp"
#include "sgl/linalg.hpp"
#include "sgl/metrics.hpp"
#include "sgl/solver.hpp"
#include "sgl/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerateArgs {
    std::string structure = "k-component";
    long p = 0;
    int k = 1;
    long n = 0;
    std::uint64_t seed = 1;
    double prob = 0.5;
    double p_out = 0.01;
    long rows = 0;
    long cols = 0;
    double weight_lo = 0.1;
    double weight_hi = 3.0;
    double noise = 0.0;
    std::string out_dir = ".";
    std::string prefix = "graph";
};

struct LearnArgs {
    std::string input;
    bool covariance = false;
    int k = 1;
    double alpha = 0.0;
    double beta = 1.0;
    double beta_growth = 1.5;
    int beta_every = 50;
    double beta_max = 1e6;
    std::optional<double> c1;
    std::optional<double> c2;
    double tol = 1e-5;
    int max_iter = 10000;
    std::string cospectral;
    std::string out;
};

struct EvalArgs {
    std::string learned;
    std::string truth;
    std::string pred_labels;
    std::string true_labels;
    std::string out;
};

struct ExportArgs {
    std::string graph;
    std::string out;
    double threshold = -1.0;
};

int cmd_generate(const GenerateArgs& a) {
    if (a.p < 2 && a.structure != "grid") throw UsageError("--p must be >= 2");
    if (a.n < 1) throw UsageError("--n must be >= 1");
    const sgl::WeightRange range{a.weight_lo, a.weight_hi};
    sgl::GroundTruthGraph g;
    if (a.structure == "k-component") {
        if (a.k < 1 || a.k > a.p) throw UsageError("--k must satisfy 1 <= k <= p");
        g = sgl::gen_k_component(a.p, a.k, a.prob, range, a.seed);
    } else if (a.structure == "grid") {
        long rows = a.rows;
        long cols = a.cols;
        if (rows == 0 && cols == 0) {
            const auto side = static_cast<long>(std::lround(std::sqrt(static_cast<double>(a.p))));
            if (side * side != a.p) throw UsageError("grid needs --rows/--cols or a square --p");
            rows = cols = side;
        }
        if (rows < 1 || cols < 1 || rows * cols < 2) throw UsageError("grid needs rows * cols >= 2");
        if (a.p != 0 && rows * cols != a.p) throw UsageError("--p does not equal rows * cols");
        g = sgl::gen_grid(rows, cols, range, a.seed);
    } else if (a.structure == "erdos-renyi") {
        g = sgl::gen_erdos_renyi(a.p, a.prob, range, a.seed);
    } else if (a.structure == "modular") {
        if (a.k < 1 || a.k > a.p) throw UsageError("--k must satisfy 1 <= k <= p");
        g = sgl::gen_modular(a.p, a.k, a.prob, a.p_out, range, a.seed);
    } else {
        throw UsageError("unknown --structure '" + a.structure + "'");
    }

    Eigen::MatrixXd X = sgl::sample_gmrf(g, a.n, a.seed + 1);
    if (a.noise > 0.0) X = sgl::add_noise(X, a.noise, a.seed + 2);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path graph_path = dir / (a.prefix + ".json");
    const fs::path data_path = dir / (a.prefix + "_data.csv");
    const fs::path labels_path = dir / (a.prefix + "_labels.csv");
    sgl::io::write_json(graph_path, sgl::io::to_json(g));
    sgl::io::write_csv_matrix(data_path, X);
    sgl::io::write_labels_csv(labels_path, g.partition);
    std::cout << "wrote " << graph_path.string() << ", " << data_path.string() << ", " << labels_path.string()
              << "\n";
    return 0;
}

int cmd_learn(const LearnArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    const Eigen::MatrixXd data = sgl::io::read_csv_matrix(a.input);
    Eigen::MatrixXd S;
    if (a.covariance) {
        if (data.rows() != data.cols()) throw sgl::InvalidInput("covariance input must be square");
        S = data;
    } else {
        S = sgl::sample_covariance(data);
    }
    const auto p = S.rows();

    sgl::SglConfig config;
    config.alpha = a.alpha;
    config.beta0 = a.beta;
    config.beta_growth = a.beta_growth;
    config.beta_update_every = a.beta_every;
    config.beta_max = std::max(a.beta_max, a.beta);
    config.max_iter = a.max_iter;
    config.rel_tol = a.tol;
    if (!a.cospectral.empty()) {
        config.constraint = sgl::SpectralConstraint::cospectral(sgl::io::read_vector(a.cospectral));
    } else if (a.k == 1) {
        config.constraint = sgl::SpectralConstraint::sparse_connected(a.c1, a.c2);
    } else {
        if (a.k >= p) throw sgl::InvalidConfig("--k must be smaller than the number of variables");
        config.constraint = sgl::SpectralConstraint::k_component(a.k, a.c1, a.c2);
    }

    const sgl::LearnedGraph g = sgl::run(S, config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string out = a.out.empty() ? fs::path(a.input).replace_extension().string() + "_learned" : a.out;
    const fs::path json_path = out + ".json";
    const fs::path dot_path = out + ".dot";
    const fs::path manifest_path = out + ".manifest.json";
    if (json_path.has_parent_path()) fs::create_directories(json_path.parent_path());

    sgl::io::write_json(json_path, sgl::io::to_json(g, config));
    const double threshold = sgl::kEdgeThreshold * g.weights.values().maxCoeff();
    sgl::io::write_dot(dot_path, g.weights.values(), p, &g.component_labels, threshold);

    sgl::io::Json manifest;
    manifest["input"] = a.input;
    manifest["input_is_covariance"] = a.covariance;
    manifest["config"] = sgl::io::to_json(config);
    manifest["seed"] = nullptr;
    manifest["outputs"] = {json_path.string(), dot_path.string()};
    manifest["iterations"] = g.iterations;
    manifest["converged"] = g.converged;
    manifest["final_objective"] = g.final_objective;
    manifest["wall_time_s"] = wall;
    sgl::io::write_json(manifest_path, manifest);

    const int components = sgl::component_count(g.component_labels);
    std::cout << (g.converged ? "converged" : "not converged") << " after " << g.iterations
              << " iterations; objective " << g.final_objective << "; " << components << " component"
              << (components == 1 ? "" : "s") << "\nwrote " << json_path.string() << ", " << dot_path.string()
              << ", " << manifest_path.string() << "\n";
    return g.converged ? kExitConverged : kExitNotConverged;
}

int cmd_eval(const EvalArgs& a) {
    const sgl::io::GraphFile learned = sgl::io::read_graph_json(a.learned);
    const sgl::io::GraphFile truth = sgl::io::read_graph_json(a.truth);
    if (learned.nodes != truth.nodes)
        throw sgl::InvalidInput("node count mismatch: learned " + std::to_string(learned.nodes) + ", truth " +
                                std::to_string(truth.nodes));

    std::optional<std::vector<int>> pred = learned.labels;
    std::optional<std::vector<int>> tru = truth.labels;
    if (!a.pred_labels.empty()) pred = sgl::io::read_labels_csv(a.pred_labels);
    if (!a.true_labels.empty()) tru = sgl::io::read_labels_csv(a.true_labels);
    const bool have_labels = pred && tru && (!a.true_labels.empty() || sgl::component_count(*tru) > 1 ||
                                             std::any_of(tru->begin(), tru->end(), [](int l) { return l != 0; }));
    if (have_labels && pred->size() != tru->size()) throw sgl::InvalidInput("label files differ in length");

    const sgl::EvalReport report = sgl::evaluate(learned.weights, truth.weights, have_labels ? &*pred : nullptr,
                                                 have_labels ? &*tru : nullptr);
    const sgl::io::Json j = sgl::io::to_json(report);
    std::cout << sgl::io::dump(j);
    const std::string out = a.out.empty() ? fs::path(a.learned).replace_extension().string() + "_eval.json" : a.out;
    sgl::io::write_json(out, j);
    return 0;
}

int cmd_export(const ExportArgs& a) {
    const sgl::io::GraphFile g = sgl::io::read_graph_json(a.graph);
    const double threshold =
        a.threshold >= 0.0 ? a.threshold : sgl::kEdgeThreshold * (g.weights.size() ? g.weights.maxCoeff() : 0.0);
    const std::string out = a.out.empty() ? fs::path(a.graph).replace_extension(".dot").string() : a.out;
    sgl::io::write_dot(out, g.weights, g.nodes, g.labels ? &*g.labels : nullptr, threshold);
    std::cout << "wrote " << out << "\n";
    return 0;
}

void apply_thread_cap() {
    if (const char* env = std::getenv("SGL_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) sgl::kernels::set_max_threads(static_cast<int>(n));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structured graph Laplacian learning with spectral constraints"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a ground-truth graph and GMRF samples");
    generate->add_option("--structure", gen.structure, "k-component | grid | erdos-renyi | modular")
        ->check(CLI::IsMember({"k-component", "grid", "erdos-renyi", "modular"}));
    generate->add_option("--p", gen.p, "Number of nodes");
    generate->add_option("--k", gen.k, "Number of components (k-component) or blocks (modular)");
    generate->add_option("--n", gen.n, "Number of samples")->required();
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--prob", gen.prob, "Intra-block / edge probability");
    generate->add_option("--p-out", gen.p_out, "Inter-block edge probability (modular)");
    generate->add_option("--rows", gen.rows, "Grid rows");
    generate->add_option("--cols", gen.cols, "Grid columns");
    generate->add_option("--weight-lo", gen.weight_lo, "Lower edge weight");
    generate->add_option("--weight-hi", gen.weight_hi, "Upper edge weight");
    generate->add_option("--noise", gen.noise, "Std of additive Gaussian noise on samples (0 = none)");
    generate->add_option("--out-dir", gen.out_dir, "Output directory");
    generate->add_option("--prefix", gen.prefix, "Output file prefix");

    LearnArgs learn;
    auto* learn_cmd = app.add_subcommand("learn", "Learn a graph from a CSV data matrix");
    learn_cmd->add_option("input", learn.input, "CSV data matrix (rows = samples)")->required();
    learn_cmd->add_flag("--covariance", learn.covariance, "Input is a p x p covariance matrix");
    learn_cmd->add_option("--k", learn.k, "Number of connected components");
    learn_cmd->add_option("--alpha", learn.alpha, "Sparsity weight");
    learn_cmd->add_option("--beta", learn.beta, "Initial spectral penalty");
    learn_cmd->add_option("--beta-growth", learn.beta_growth, "Multiplier applied to beta on schedule");
    learn_cmd->add_option("--beta-every", learn.beta_every, "Iterations between beta increases");
    learn_cmd->add_option("--beta-max", learn.beta_max, "Cap on beta");
    learn_cmd->add_option("--c1", learn.c1, "Lower bound on nonzero eigenvalues");
    learn_cmd->add_option("--c2", learn.c2, "Upper bound on nonzero eigenvalues");
    learn_cmd->add_option("--tol", learn.tol, "Relative stopping tolerance");
    learn_cmd->add_option("--max-iter", learn.max_iter, "Iteration limit");
    learn_cmd->add_option("--cospectral", learn.cospectral, "File with the target Laplacian spectrum");
    learn_cmd->add_option("--out", learn.out, "Output prefix (writes .json, .dot, .manifest.json)");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Compare a learned graph with ground truth");
    eval->add_option("--learned", ev.learned, "Learned graph JSON")->required();
    eval->add_option("--truth", ev.truth, "Ground-truth graph JSON")->required();
    eval->add_option("--pred-labels", ev.pred_labels, "Predicted labels CSV (overrides learned labels)");
    eval->add_option("--true-labels", ev.true_labels, "True labels CSV (overrides truth partition)");
    eval->add_option("--out", ev.out, "Report path");

    ExportArgs ex;
    auto* exp = app.add_subcommand("export", "Convert a graph JSON to Graphviz DOT");
    exp->add_option("--graph", ex.graph, "Graph JSON")->required();
    exp->add_option("--out", ex.out, "DOT path");
    exp->add_option("--threshold", ex.threshold, "Edge weight threshold (default 1e-4 * max weight)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    apply_thread_cap();
    try {
        if (*generate) return cmd_generate(gen);
        if (*learn_cmd) return cmd_learn(learn);
        if (*eval) return cmd_eval(ev);
        if (*exp) return cmd_export(ex);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgl/metrics.hpp"
#include "sgl/solver.hpp"
#include "sgl/synthetic.hpp"

namespace sgl::io {

using Json = nlohmann::ordered_json;

// --- CSV -------------------------------------------------------------------
// Rows are samples, columns are variables. A first row that does not parse as
// numbers is taken as a header. Fields may be double-quoted.

Eigen::MatrixXd parse_csv_matrix(std::istream& in);
Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path);
/// Writes a header row of column indices followed by one row per sample.
void write_csv_matrix(std::ostream& out, const Eigen::MatrixXd& X);
void write_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& X);

/// "node,label" rows.
std::vector<int> read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels);

/// Flat list of numbers separated by commas, whitespace or newlines.
Eigen::VectorXd read_vector(const std::filesystem::path& path);

// --- JSON ------------------------------------------------------------------

/// Graph as read back from any graph JSON this library writes.
struct GraphFile {
    std::string kind;  // "ground_truth" or "learned"
    Index nodes = 0;
    Eigen::VectorXd weights;
    std::optional<std::vector<int>> labels;  // partition or learned component labels
};

Json edges_to_json(const Eigen::VectorXd& w, Index p);
Json to_json(const GroundTruthGraph& g);
Json to_json(const LearnedGraph& g, const SglConfig& config);
Json to_json(const SglConfig& config);
Json to_json(const EvalReport& r);

GraphFile graph_from_json(const Json& j);
GraphFile read_graph_json(const std::filesystem::path& path);

/// Two-space indented dump with trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

// --- Graphviz --------------------------------------------------------------

/// Undirected DOT graph; edges with w > threshold, weight as label, penwidth
/// proportional to w / max(w).
std::string to_dot(const Eigen::VectorXd& w, Index p, const std::vector<int>* labels = nullptr,
                   double threshold = 0.0);
void write_dot(const std::filesystem::path& path, const Eigen::VectorXd& w, Index p,
               const std::vector<int>* labels = nullptr, double threshold = 0.0);

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace sgl::io

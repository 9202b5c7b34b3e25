#include "sgl/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sgl/error.hpp"

namespace sgl::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
    return out;
}

// Splits one CSV record; handles "quoted, fields" and "" escapes.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no);
    fields.push_back(std::move(cur));
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

}  // namespace

Eigen::MatrixXd parse_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        const auto fields = split_record(line, line_no);
        std::vector<double> values(fields.size());
        bool numeric = true;
        std::size_t bad = 0;
        for (std::size_t f = 0; f < fields.size(); ++f)
            if (!parse_number(fields[f], values[f])) {
                numeric = false;
                bad = f;
                break;
            }
        if (first_record) {
            first_record = false;
            width = fields.size();
            if (!numeric) continue;  // header
        }
        if (!numeric)
            throw ParseError("field " + std::to_string(bad + 1) + " is not a number: '" + trim(fields[bad]) + "'",
                             line_no);
        if (fields.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError("no data rows", line_no);
    Eigen::MatrixXd X(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c) X(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    return X;
}

Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return parse_csv_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_csv_matrix(std::ostream& out, const Eigen::MatrixXd& X) {
    for (Index c = 0; c < X.cols(); ++c) out << (c ? "," : "") << "x" << c;
    out << '\n';
    for (Index r = 0; r < X.rows(); ++r) {
        for (Index c = 0; c < X.cols(); ++c) out << (c ? "," : "") << format_double(X(r, c));
        out << '\n';
    }
}

void write_csv_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& X) {
    auto out = open_out(path);
    write_csv_matrix(out, X);
}

std::vector<int> read_labels_csv(const std::filesystem::path& path) {
    const Eigen::MatrixXd M = read_csv_matrix(path);
    if (M.cols() != 2) throw ParseError(path.string() + ": labels file needs columns node,label", 0);
    std::vector<int> labels(static_cast<std::size_t>(M.rows()), 0);
    std::vector<char> seen(labels.size(), 0);
    for (Index r = 0; r < M.rows(); ++r) {
        const auto node = static_cast<long long>(M(r, 0));
        if (node < 0 || node >= M.rows() || static_cast<double>(node) != M(r, 0) || seen[node])
            throw ParseError(path.string() + ": bad or repeated node index", static_cast<std::size_t>(r) + 2);
        seen[node] = 1;
        labels[node] = static_cast<int>(M(r, 1));
    }
    return labels;
}

void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels) {
    auto out = open_out(path);
    out << "node,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

Eigen::VectorXd read_vector(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            double v = 0.0;
            if (!parse_number(tok, v)) throw ParseError(path.string() + ": not a number: '" + tok + "'", line_no);
            values.push_back(v);
        }
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

Json edges_to_json(const Eigen::VectorXd& w, Index p) {
    const EdgeIndexMap map(p);
    Json edges = Json::array();
    for (Index k = 0; k < w.size(); ++k) {
        if (w[k] == 0.0) continue;
        const auto [i, j] = map.pair(k);
        edges.push_back(Json{{"source", j}, {"target", i}, {"weight", w[k]}});
    }
    return edges;
}

namespace {

template <class Vec>
Json array_of(const Vec& v) {
    Json a = Json::array();
    for (Index i = 0; i < static_cast<Index>(v.size()); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

Json to_json(const GroundTruthGraph& g) {
    Json j;
    j["format"] = "sgl-graph";
    j["version"] = 1;
    j["kind"] = "ground_truth";
    j["structure"] = to_string(g.structure);
    j["nodes"] = g.nodes();
    j["edges"] = edges_to_json(g.weights.values(), g.nodes());
    j["partition"] = g.partition;
    return j;
}

Json to_json(const SglConfig& c) {
    Json j;
    j["alpha"] = c.alpha;
    j["beta0"] = c.beta0;
    j["beta_growth"] = c.beta_growth;
    j["beta_update_every"] = c.beta_update_every;
    j["beta_max"] = c.beta_max;
    j["max_iter"] = c.max_iter;
    j["rel_tol"] = c.rel_tol;
    Json s;
    s["kind"] = to_string(c.constraint.kind);
    s["k"] = c.constraint.k;
    s["c1"] = c.constraint.c1 ? Json(*c.constraint.c1) : Json(nullptr);
    s["c2"] = c.constraint.c2 ? Json(*c.constraint.c2) : Json(nullptr);
    s["fixed_spectrum"] = array_of(c.constraint.fixed_spectrum);
    j["constraint"] = s;
    return j;
}

Json to_json(const LearnedGraph& g, const SglConfig& config) {
    const Index p = g.weights.nodes();
    Json j;
    j["format"] = "sgl-graph";
    j["version"] = 1;
    j["kind"] = "learned";
    j["nodes"] = p;
    j["edges"] = edges_to_json(g.weights.values(), p);
    j["eigenvalues"] = array_of(g.eigenvalues);
    j["labels"] = g.component_labels;
    j["components"] = g.component_labels.empty() ? 0 : *std::max_element(g.component_labels.begin(), g.component_labels.end()) + 1;
    j["converged"] = g.converged;
    j["iterations"] = g.iterations;
    j["final_objective"] = g.final_objective;
    j["c1"] = g.c1;
    j["c2"] = g.c2;
    j["config"] = to_json(config);
    j["objective_trace"] = g.objective_trace;
    j["beta_trace"] = g.beta_trace;
    return j;
}

Json to_json(const EvalReport& r) {
    Json j;
    j["relative_error"] = r.relative_error;
    j["fscore"] = r.fscore;
    j["accuracy"] = r.accuracy ? Json(*r.accuracy) : Json(nullptr);
    j["edge_counts"] = Json{{"tp", r.edge_counts.tp}, {"fp", r.edge_counts.fp},
                            {"fn", r.edge_counts.fn}, {"tn", r.edge_counts.tn}};
    return j;
}

GraphFile graph_from_json(const Json& j) {
    try {
        GraphFile g;
        g.kind = j.value("kind", std::string("ground_truth"));
        g.nodes = j.at("nodes").get<Index>();
        const EdgeIndexMap map(g.nodes);
        g.weights = Eigen::VectorXd::Zero(map.edges());
        for (const auto& e : j.at("edges")) {
            const auto a = e.at("source").get<Index>();
            const auto b = e.at("target").get<Index>();
            const double w = e.at("weight").get<double>();
            if (a < 0 || b < 0 || a >= g.nodes || b >= g.nodes || a == b)
                throw InvalidInput("edge endpoint out of range");
            if (!(w >= 0.0)) throw InvalidInput("edge weight must be nonnegative");
            g.weights[map.index(std::max(a, b), std::min(a, b))] = w;
        }
        for (const char* key : {"partition", "labels"})
            if (j.contains(key)) {
                g.labels = j.at(key).get<std::vector<int>>();
                if (static_cast<Index>(g.labels->size()) != g.nodes)
                    throw InvalidInput(std::string(key) + " length does not match node count");
            }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what(), 0);
    }
}

GraphFile read_graph_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    return graph_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& j) {
    auto out = open_out(path);
    out << dump(j);
}

std::string to_dot(const Eigen::VectorXd& w, Index p, const std::vector<int>* labels, double threshold) {
    const EdgeIndexMap map(p);
    const double wmax = w.size() ? w.maxCoeff() : 0.0;
    std::ostringstream out;
    out << "graph G {\n";
    out << "  node [shape=circle];\n";
    for (Index i = 0; i < p; ++i) {
        out << "  " << i;
        if (labels) out << " [group=" << (*labels)[i] << "]";
        out << ";\n";
    }
    char buf[64];
    for (Index k = 0; k < w.size(); ++k) {
        if (!(w[k] > threshold) || w[k] == 0.0) continue;
        const auto [i, j] = map.pair(k);
        std::snprintf(buf, sizeof buf, "%.4g", w[k]);
        std::string label = buf;
        std::snprintf(buf, sizeof buf, "%.3f", 5.0 * w[k] / wmax);
        out << "  " << j << " -- " << i << " [label=\"" << label << "\", weight=" << format_double(w[k])
            << ", penwidth=" << buf << "];\n";
    }
    out << "}\n";
    return out.str();
}

void write_dot(const std::filesystem::path& path, const Eigen::VectorXd& w, Index p, const std::vector<int>* labels,
               double threshold) {
    auto out = open_out(path);
    out << to_dot(w, p, labels, threshold);
}

}  // namespace sgl::io

// SPDX-License-Identifier: Apache-2.0
#include "gwf/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace gwf {

namespace {

std::ifstream open_required(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open required file: " + path);
    return in;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::vector<double> parse_reals(const std::string& line, const std::string& file, int line_no) {
    std::vector<double> values;
    std::string token;
    std::stringstream ss(line);
    while (std::getline(ss, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw data_error(file + ":" + std::to_string(line_no) + ": cannot parse '" + token +
                             "' as a real number");
        }
    }
    return values;
}

}  // namespace

Dataset load_tudataset(const std::string& dir, const std::string& name) {
    namespace fs = std::filesystem;
    const std::string prefix = (fs::path(dir) / name).string() + "_";
    const std::string a_path = prefix + "A.txt";
    const std::string ind_path = prefix + "graph_indicator.txt";
    const std::string label_path = prefix + "graph_labels.txt";
    const std::string attr_path = prefix + "node_attributes.txt";

    // node -> graph map, graph ids remapped to contiguous 0-based order
    std::vector<int> node_graph;  // per node (0-based), raw graph id
    {
        std::ifstream in = open_required(ind_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            try {
                node_graph.push_back(std::stoi(line));
            } catch (const std::exception&) {
                throw data_error(ind_path + ":" + std::to_string(line_no) +
                                 ": cannot parse graph id");
            }
        }
    }
    if (node_graph.empty()) throw data_error(ind_path + ": no nodes listed");

    std::map<int, int> graph_index;  // raw id -> 0-based id, in sorted raw order
    for (int raw : node_graph) graph_index.emplace(raw, 0);
    int next_id = 0;
    for (auto& [raw, idx] : graph_index) idx = next_id++;
    const int num_graphs = next_id;

    std::vector<int> graph_of(node_graph.size());
    std::vector<int> local_index(node_graph.size());
    std::vector<int> node_count(num_graphs, 0);
    for (std::size_t v = 0; v < node_graph.size(); ++v) {
        const int g = graph_index.at(node_graph[v]);
        graph_of[v] = g;
        local_index[v] = node_count[g]++;
    }

    Dataset dataset;
    dataset.name = name;
    dataset.graphs.reserve(num_graphs);
    for (int g = 0; g < num_graphs; ++g) {
        dataset.graphs.push_back(
            Graph::with_uniform_dist(Matrix::Zero(node_count[g], node_count[g])));
    }

    {
        std::ifstream in = open_required(a_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            int u = 0, v = 0;
            if (std::sscanf(line.c_str(), "%d , %d", &u, &v) != 2 &&
                std::sscanf(line.c_str(), "%d %d", &u, &v) != 2)
                throw data_error(a_path + ":" + std::to_string(line_no) + ": malformed edge line");
            if (u < 1 || v < 1 || u > static_cast<int>(node_graph.size()) ||
                v > static_cast<int>(node_graph.size()))
                throw data_error(a_path + ":" + std::to_string(line_no) +
                                 ": node id outside the indicator range");
            const int gu = graph_of[u - 1];
            const int gv = graph_of[v - 1];
            if (gu != gv)
                throw data_error(a_path + ":" + std::to_string(line_no) +
                                 ": edge crosses graph boundaries");
            dataset.graphs[gu].adjacency(local_index[u - 1], local_index[v - 1]) = 1.0;
        }
    }

    if (std::ifstream in{label_path}) {
        std::vector<int> labels;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            try {
                labels.push_back(std::stoi(line));
            } catch (const std::exception&) {
                throw data_error(label_path + ":" + std::to_string(line_no) +
                                 ": cannot parse label");
            }
        }
        if (static_cast<int>(labels.size()) != num_graphs)
            throw data_error(label_path + ": expected " + std::to_string(num_graphs) +
                             " labels, found " + std::to_string(labels.size()));
        dataset.labels = std::move(labels);
    }

    if (std::ifstream in{attr_path}) {
        std::string line;
        int line_no = 0;
        std::size_t node = 0;
        std::vector<std::vector<double>> rows(node_graph.size());
        int dim = -1;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            if (node >= node_graph.size())
                throw data_error(attr_path + ":" + std::to_string(line_no) +
                                 ": more attribute lines than nodes");
            std::vector<double> values = parse_reals(line, attr_path, line_no);
            if (dim < 0) dim = static_cast<int>(values.size());
            if (static_cast<int>(values.size()) != dim)
                throw data_error(attr_path + ":" + std::to_string(line_no) +
                                 ": attribute dimension differs from previous lines");
            rows[node++] = std::move(values);
        }
        if (node != node_graph.size())
            throw data_error(attr_path + ": expected " + std::to_string(node_graph.size()) +
                             " attribute lines, found " + std::to_string(node));
        std::vector<Matrix> features;
        for (int g = 0; g < num_graphs; ++g) features.push_back(Matrix::Zero(node_count[g], dim));
        for (std::size_t v = 0; v < rows.size(); ++v)
            for (int d = 0; d < dim; ++d) features[graph_of[v]](local_index[v], d) = rows[v][d];
        for (int g = 0; g < num_graphs; ++g) dataset.graphs[g].features = std::move(features[g]);
    }

    for (const Graph& g : dataset.graphs) g.validate();
    return dataset;
}

void write_tudataset(const Dataset& dataset, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string prefix = (fs::path(dir) / dataset.name).string() + "_";

    std::ofstream a_out(prefix + "A.txt");
    std::ofstream ind_out(prefix + "graph_indicator.txt");
    if (!a_out || !ind_out) throw io_error("cannot write dataset files under " + dir);

    int base = 0;  // global id of the first node of the current graph (0-based)
    const bool with_features =
        !dataset.graphs.empty() && dataset.graphs.front().has_features();
    std::ofstream attr_out;
    if (with_features) {
        attr_out.open(prefix + "node_attributes.txt");
        if (!attr_out) throw io_error("cannot write " + prefix + "node_attributes.txt");
    }

    for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
        const Graph& graph = dataset.graphs[g];
        const int n = graph.size();
        for (int v = 0; v < n; ++v) ind_out << (g + 1) << "\n";
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (graph.adjacency(u, v) != 0.0)
                    a_out << (base + u + 1) << ", " << (base + v + 1) << "\n";
        if (with_features) {
            for (int v = 0; v < n; ++v) {
                for (int d = 0; d < graph.feature_dim(); ++d) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g", (*graph.features)(v, d));
                    attr_out << (d ? ", " : "") << buf;
                }
                attr_out << "\n";
            }
        }
        base += n;
    }

    if (dataset.labels) {
        std::ofstream label_out(prefix + "graph_labels.txt");
        if (!label_out) throw io_error("cannot write " + prefix + "graph_labels.txt");
        for (int label : *dataset.labels) label_out << label << "\n";
    }
}

}  // namespace gwf

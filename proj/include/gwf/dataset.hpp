// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwf/graph.hpp"

namespace gwf {

struct Dataset {
    std::vector<Graph> graphs;
    std::optional<std::vector<int>> labels;  // one class id per graph
    std::string name;

    int size() const { return static_cast<int>(graphs.size()); }
};

// Reads the plain-text benchmark layout:
//   {name}_A.txt               "i, j" per edge, 1-indexed global node ids
//   {name}_graph_indicator.txt line n = graph id of node n
//   {name}_graph_labels.txt    optional, one label per graph
//   {name}_node_attributes.txt optional, comma-separated reals per node
// Edge entries are recorded as written (directed, weight 1; duplicates
// collapse); node distributions are uniform.
Dataset load_tudataset(const std::string& dir, const std::string& name);

// Writes a dataset back to the same layout. Adjacency entries are emitted as
// directed unit edges, so only binary graphs survive a round trip unchanged.
void write_tudataset(const Dataset& dataset, const std::string& dir);

}  // namespace gwf

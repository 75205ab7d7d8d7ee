// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "gwf/train.hpp"

namespace gwf {

// Model persistence as a single JSON document:
//   {format_version, config, atoms: [{n, raw, raw_features?}], embeddings:
//    [{graph_id, z}]}
// Matrices are stored as row-major arrays; the numeric payload round-trips
// bit-exactly.
void save_model(const GwfModel& model, const std::string& path);
GwfModel load_model(const std::string& path);

}  // namespace gwf

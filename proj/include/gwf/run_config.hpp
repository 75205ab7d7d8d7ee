// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "gwf/train.hpp"

namespace gwf {

// A complete run description: training hyperparameters plus dataset location
// and output directory. Serialized as JSON; unknown keys are rejected.
struct RunConfig {
    TrainConfig train;
    std::string dataset_dir;
    std::string dataset_name;
    std::string output_dir;
    bool symmetrize = false;

    void validate() const;
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

}  // namespace gwf

// SPDX-License-Identifier: Apache-2.0
#include "gwf/run_config.hpp"

#include <fstream>

#include <json.hpp>

#include "config_json.hpp"

namespace gwf {

using nlohmann::json;

void RunConfig::validate() const {
    train.validate();
    if (dataset_name.empty()) throw std::invalid_argument("dataset_name must not be empty");
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open run config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw data_error("run config " + path + ": " + e.what());
    }
    detail::reject_unknown_keys(
        j,
        {"num_atoms", "inner_iters", "outer_iters", "gamma", "learning_rate", "epochs", "solver",
         "semi_weight", "rng_seed", "parallel_epoch", "dataset_dir", "dataset_name", "output_dir",
         "symmetrize"},
        "run config");
    json train_part = j;
    for (const char* key : {"dataset_dir", "dataset_name", "output_dir", "symmetrize"})
        train_part.erase(key);

    RunConfig config;
    config.train = detail::config_from_json(train_part);
    if (j.contains("dataset_dir")) config.dataset_dir = j["dataset_dir"].get<std::string>();
    if (j.contains("dataset_name")) config.dataset_name = j["dataset_name"].get<std::string>();
    if (j.contains("output_dir")) config.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("symmetrize")) config.symmetrize = j["symmetrize"].get<bool>();
    config.validate();
    return config;
}

void save_run_config(const RunConfig& config, const std::string& path) {
    json j = detail::config_to_json(config.train);
    j["dataset_dir"] = config.dataset_dir;
    j["dataset_name"] = config.dataset_name;
    j["output_dir"] = config.output_dir;
    j["symmetrize"] = config.symmetrize;
    std::ofstream out(path);
    if (!out) throw io_error("cannot write run config: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace gwf

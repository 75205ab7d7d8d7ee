// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "gwf/train.hpp"

namespace gwf::detail {

nlohmann::json config_to_json(const TrainConfig& config);
TrainConfig config_from_json(const nlohmann::json& j);
void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where);

}  // namespace gwf::detail

// SPDX-License-Identifier: Apache-2.0
#include "gwf/model_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "config_json.hpp"

namespace gwf {

using nlohmann::json;
using detail::config_from_json;
using detail::config_to_json;
using detail::reject_unknown_keys;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) rows.push_back(m(i, j));
    return rows;
}

Matrix matrix_from_json(const json& values, Eigen::Index rows, Eigen::Index cols,
                        const std::string& what) {
    if (!values.is_array() || static_cast<Eigen::Index>(values.size()) != rows * cols)
        throw data_error("model file: " + what + " has the wrong number of entries");
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[idx++].get<double>();
    return m;
}

}  // namespace

namespace detail {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw data_error(where + ": unknown key '" + key + "'");
}

json config_to_json(const TrainConfig& c) {
    json j;
    j["num_atoms"] = c.num_atoms;
    j["inner_iters"] = c.inner_iters;
    j["outer_iters"] = c.outer_iters;
    if (c.gamma)
        j["gamma"] = *c.gamma;
    else
        j["gamma"] = nullptr;
    j["learning_rate"] = c.learning_rate;
    j["epochs"] = c.epochs;
    j["solver"] = c.solver == SolverKind::ppa ? "ppa" : "badmm";
    j["semi_weight"] = c.semi_weight;
    j["rng_seed"] = c.rng_seed;
    j["parallel_epoch"] = c.parallel_epoch;
    return j;
}

TrainConfig config_from_json(const json& j) {
    reject_unknown_keys(j, {"num_atoms", "inner_iters", "outer_iters", "gamma", "learning_rate",
                            "epochs", "solver", "semi_weight", "rng_seed", "parallel_epoch"},
                        "config");
    TrainConfig c;
    if (j.contains("num_atoms")) c.num_atoms = j["num_atoms"].get<int>();
    if (j.contains("inner_iters")) c.inner_iters = j["inner_iters"].get<int>();
    if (j.contains("outer_iters")) c.outer_iters = j["outer_iters"].get<int>();
    if (j.contains("gamma") && !j["gamma"].is_null()) c.gamma = j["gamma"].get<double>();
    if (j.contains("learning_rate")) c.learning_rate = j["learning_rate"].get<double>();
    if (j.contains("epochs")) c.epochs = j["epochs"].get<int>();
    if (j.contains("solver")) {
        const std::string s = j["solver"].get<std::string>();
        if (s == "ppa")
            c.solver = SolverKind::ppa;
        else if (s == "badmm")
            c.solver = SolverKind::badmm;
        else
            throw data_error("config: unknown solver '" + s + "'");
    }
    if (j.contains("semi_weight")) c.semi_weight = j["semi_weight"].get<double>();
    if (j.contains("rng_seed")) c.rng_seed = j["rng_seed"].get<std::uint64_t>();
    if (j.contains("parallel_epoch")) c.parallel_epoch = j["parallel_epoch"].get<bool>();
    return c;
}

}  // namespace detail

void save_model(const GwfModel& model, const std::string& path) {
    json j;
    j["format_version"] = 1;
    j["config"] = config_to_json(model.config);
    json atoms = json::array();
    for (const AtomParams& atom : model.atoms) {
        json entry;
        entry["n"] = atom.size();
        entry["raw"] = matrix_to_json(atom.raw);
        if (atom.raw_features) {
            entry["feature_dim"] = atom.raw_features->cols();
            entry["raw_features"] = matrix_to_json(*atom.raw_features);
        }
        atoms.push_back(std::move(entry));
    }
    j["atoms"] = std::move(atoms);
    json embeddings = json::array();
    for (std::size_t i = 0; i < model.embeddings.size(); ++i) {
        json entry;
        entry["graph_id"] = i;
        entry["z"] = matrix_to_json(model.embeddings[i].raw);
        embeddings.push_back(std::move(entry));
    }
    j["embeddings"] = std::move(embeddings);

    std::ofstream out(path);
    if (!out) throw io_error("cannot write model file: " + path);
    out << j.dump(2) << "\n";
}

GwfModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw data_error("model file " + path + ": " + e.what());
    }
    reject_unknown_keys(j, {"format_version", "config", "atoms", "embeddings"}, "model file");
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw data_error("model file " + path + ": unsupported format_version");

    GwfModel model;
    model.config = config_from_json(j.at("config"));
    for (const json& entry : j.at("atoms")) {
        reject_unknown_keys(entry, {"n", "raw", "raw_features", "feature_dim"}, "atom");
        const Eigen::Index n = entry.at("n").get<Eigen::Index>();
        AtomParams atom;
        atom.raw = matrix_from_json(entry.at("raw"), n, n, "atom raw");
        if (entry.contains("raw_features")) {
            const Eigen::Index dim = entry.at("feature_dim").get<Eigen::Index>();
            atom.raw_features = matrix_from_json(entry.at("raw_features"), n, dim, "atom features");
        }
        model.atoms.push_back(std::move(atom));
    }
    if (model.atoms.empty()) throw data_error("model file: no atoms");
    model.embeddings.resize(j.at("embeddings").size());
    for (const json& entry : j.at("embeddings")) {
        reject_unknown_keys(entry, {"graph_id", "z"}, "embedding");
        const std::size_t idx = entry.at("graph_id").get<std::size_t>();
        if (idx >= model.embeddings.size())
            throw data_error("model file: embedding graph_id out of range");
        const json& z = entry.at("z");
        if (z.size() != model.atoms.size())
            throw data_error("model file: embedding length does not match the atom count");
        Vector v(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) v[static_cast<Eigen::Index>(i)] = z[i].get<double>();
        model.embeddings[idx].raw = std::move(v);
    }
    return model;
}

}  // namespace gwf

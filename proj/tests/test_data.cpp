// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gwf/dataset.hpp"
#include "gwf/generators.hpp"
#include "gwf/run_config.hpp"
#include "oracles.hpp"

using namespace gwf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

void write_file(const fs::path& p, const std::string& contents) {
    std::ofstream out(p);
    out << contents;
}

int undirected_edge_count(const Matrix& a) {
    int count = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != 0.0 || a(j, i) != 0.0) ++count;
    return count;
}

bool connected(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            if (!seen[v] && (a(u, v) != 0.0 || a(v, u) != 0.0)) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("tudataset loader builds graphs from the fixture") {
    TempDir dir("gwf_tud_fixture");
    write_file(dir.path / "TOY_graph_indicator.txt", "1\n1\n2\n2\n");
    write_file(dir.path / "TOY_A.txt", "1, 2\n3, 4\n");

    const Dataset dataset = load_tudataset(dir.str(), "TOY");
    REQUIRE(dataset.size() == 2);
    for (const Graph& g : dataset.graphs) {
        CHECK(g.size() == 2);
        CHECK(g.adjacency(0, 1) == 1.0);
        CHECK(g.adjacency(1, 0) == 0.0);
        CHECK(g.node_dist[0] == doctest::Approx(0.5));
    }
    CHECK_FALSE(dataset.labels.has_value());
}

TEST_CASE("tudataset loader reports missing and malformed inputs") {
    TempDir dir("gwf_tud_errors");
    write_file(dir.path / "TOY_A.txt", "1, 2\n");
    CHECK_THROWS_AS(load_tudataset(dir.str(), "TOY"), io_error);

    write_file(dir.path / "TOY_graph_indicator.txt", "1\n1\n2\n2\n");
    write_file(dir.path / "TOY_A.txt", "1, 3\n");  // crosses graphs
    CHECK_THROWS_AS(load_tudataset(dir.str(), "TOY"), data_error);

    write_file(dir.path / "TOY_A.txt", "1, 2\n");
    write_file(dir.path / "TOY_node_attributes.txt", "0.5, 1.0\n0.25\n1, 2\n3, 4\n");
    CHECK_THROWS_AS(load_tudataset(dir.str(), "TOY"), data_error);

    write_file(dir.path / "TOY_node_attributes.txt", "1\n2\n3\n4\n");
    write_file(dir.path / "TOY_graph_labels.txt", "1\n");  // wrong count
    CHECK_THROWS_AS(load_tudataset(dir.str(), "TOY"), data_error);
}

TEST_CASE("a binary dataset with labels and attributes survives a round trip") {
    Dataset dataset;
    dataset.name = "ROUNDTRIP";
    Rng rng(5);
    std::vector<int> labels;
    for (int i = 0; i < 6; ++i) {
        const int n = 4 + static_cast<int>(rng.uniform_int(4));
        Graph g = generate_sbm(n, {n}, 0.5, 0.0, 100 + i);
        g.features = Matrix::NullaryExpr(n, 3, [&](Eigen::Index, Eigen::Index) {
            return rng.normal();
        });
        dataset.graphs.push_back(std::move(g));
        labels.push_back(i % 2);
    }
    dataset.labels = labels;

    TempDir dir("gwf_tud_roundtrip");
    write_tudataset(dataset, dir.str());
    const Dataset loaded = load_tudataset(dir.str(), "ROUNDTRIP");

    REQUIRE(loaded.size() == dataset.size());
    CHECK(*loaded.labels == labels);
    for (int i = 0; i < dataset.size(); ++i) {
        CHECK((loaded.graphs[i].adjacency - dataset.graphs[i].adjacency).cwiseAbs().maxCoeff() ==
              0.0);
        REQUIRE(loaded.graphs[i].features.has_value());
        CHECK((*loaded.graphs[i].features - *dataset.graphs[i].features).cwiseAbs().maxCoeff() ==
              0.0);
    }
}

TEST_CASE("preferential attachment: edge count, degrees, determinism") {
    const Graph g = generate_ba(5, 1, false, 3);
    CHECK(undirected_edge_count(g.adjacency) == 4);  // 1 core edge + 3 attachments
    CHECK(connected(g.adjacency));

    for (std::uint64_t seed : {1ULL, 9ULL}) {
        const Graph d = generate_ba(12, 3, true, seed);
        for (int u = 4; u < 12; ++u) CHECK(d.adjacency.row(u).sum() == doctest::Approx(3.0));
        const Graph again = generate_ba(12, 3, true, seed);
        CHECK((d.adjacency - again.adjacency).cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK_THROWS_AS(generate_ba(4, 4, false, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_ba(4, 0, false, 0), std::invalid_argument);
}

TEST_CASE("block model: deterministic extremes and expected edge count") {
    const Graph cliques = generate_sbm(4, {2, 2}, 1.0, 0.0, 0);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 1) = expected(1, 0) = 1.0;
    expected(2, 3) = expected(3, 2) = 1.0;
    CHECK((cliques.adjacency - expected).cwiseAbs().maxCoeff() == 0.0);

    CHECK(generate_sbm(5, {5}, 0.0, 0.0, 1).adjacency.isZero(0.0));

    // mean edge count over 100 seeds within 3 sigma of 2*C(10,2)*0.5 + 100*0.1 = 55
    double total = 0.0;
    for (int seed = 0; seed < 100; ++seed)
        total += undirected_edge_count(generate_sbm(20, {10, 10}, 0.5, 0.1, 1000 + seed).adjacency);
    const double mean = total / 100.0;
    const double sigma_mean = std::sqrt(90 * 0.25 + 100 * 0.09) / 10.0;
    CHECK(std::abs(mean - 55.0) <= 3.0 * sigma_mean);

    CHECK_THROWS_AS(generate_sbm(5, {2, 2}, 0.5, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_sbm(4, {2, 2}, 1.5, 0.1, 0), std::invalid_argument);
}

TEST_CASE("symmetrize adds the transpose") {
    Matrix a(2, 2);
    a << 0, 1, 0, 0;
    Matrix sym(2, 2);
    sym << 0, 1, 1, 0;
    CHECK((symmetrize(Graph::with_uniform_dist(a)).adjacency - sym).cwiseAbs().maxCoeff() == 0.0);

    const Graph s = Graph::with_uniform_dist(sym);
    CHECK((symmetrize(s).adjacency - 2.0 * sym).cwiseAbs().maxCoeff() == 0.0);

    CHECK(symmetrize(Graph::with_uniform_dist(Matrix::Zero(3, 3))).adjacency.isZero(0.0));
}

TEST_CASE("run config round-trips and rejects unknown keys") {
    TempDir dir("gwf_runcfg");
    RunConfig config;
    config.train.num_atoms = 7;
    config.train.gamma = 0.25;
    config.train.solver = SolverKind::badmm;
    config.dataset_dir = "/data";
    config.dataset_name = "TOY";
    config.output_dir = "/out";
    config.symmetrize = true;

    const std::string path = (dir.path / "run.json").string();
    save_run_config(config, path);
    const RunConfig loaded = load_run_config(path);
    CHECK(loaded.train.num_atoms == 7);
    CHECK(loaded.train.gamma.value() == 0.25);
    CHECK(loaded.train.solver == SolverKind::badmm);
    CHECK(loaded.dataset_name == "TOY");
    CHECK(loaded.symmetrize);

    write_file(dir.path / "bad.json", R"({"dataset_name": "X", "mystery_knob": 3})");
    CHECK_THROWS_AS(load_run_config((dir.path / "bad.json").string()), data_error);
}

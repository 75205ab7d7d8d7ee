// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "gwf/graph_ops.hpp"
#include "oracles.hpp"

using namespace gwf;

namespace {

Graph two_cycle() {
    Matrix c(2, 2);
    c << 0, 1, 1, 0;
    return Graph::with_uniform_dist(c);
}

}  // namespace

TEST_CASE("map_atom clamps negatives and keeps shape") {
    Matrix v(2, 2);
    v << -1, 2, 0, 3;
    Matrix expected(2, 2);
    expected << 0, 2, 0, 3;
    CHECK((map_atom(v) - expected).cwiseAbs().maxCoeff() == 0.0);

    CHECK(map_atom(Matrix::Zero(3, 3)).isZero(0.0));

    Matrix single(1, 1);
    single << 0.5;
    CHECK(map_atom(single)(0, 0) == 0.5);

    CHECK_THROWS_AS(map_atom(Matrix::Zero(2, 3)), shape_error);
}

TEST_CASE("map_atom is idempotent and nonnegative") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix v = Matrix::NullaryExpr(5, 5, [&](Eigen::Index, Eigen::Index) {
            return 2.0 * rng.uniform01() - 1.0;
        });
        const Matrix once = map_atom(v);
        CHECK(once.minCoeff() >= 0.0);
        CHECK((map_atom(once) - once).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("map_weights examples") {
    Vector z2 = Vector::Zero(2);
    const Vector w2 = map_weights(z2);
    CHECK(w2[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w2[1] == doctest::Approx(0.5).epsilon(1e-14));

    Vector z1(1);
    z1 << 5.0;
    CHECK(map_weights(z1)[0] == doctest::Approx(1.0).epsilon(1e-14));

    Vector z(2);
    z << std::log(2.0), 0.0;
    const Vector w = map_weights(z);
    CHECK(w[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(map_weights(Vector()), shape_error);
}

TEST_CASE("map_weights stays on the simplex, shift invariant, argmax preserved") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Vector z = Vector::NullaryExpr(6, [&](Eigen::Index) { return 10.0 * rng.normal(); });
        const Vector w = map_weights(z);
        CHECK(w.minCoeff() > 0.0);
        CHECK(std::abs(w.sum() - 1.0) <= 1e-12);

        Eigen::Index argmax_z, argmax_w;
        z.maxCoeff(&argmax_z);
        w.maxCoeff(&argmax_w);
        CHECK(argmax_z == argmax_w);

        const Vector shifted = map_weights(Vector(z.array() + 123.25));
        CHECK((shifted - w).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("assemble_cost_const matches the definition") {
    const Graph source = two_cycle();
    Matrix single(1, 1);
    single << 0;
    const Graph target = Graph::with_uniform_dist(single);

    const Matrix cost = assemble_cost_const(source, target);
    CHECK(cost.rows() == 2);
    CHECK(cost.cols() == 1);
    CHECK(cost(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cost(1, 0) == doctest::Approx(0.5).epsilon(1e-14));

    const Graph zero_a = Graph::with_uniform_dist(Matrix::Zero(3, 3));
    const Graph zero_b = Graph::with_uniform_dist(Matrix::Zero(2, 2));
    CHECK(assemble_cost_const(zero_a, zero_b).isZero(0.0));

    Matrix dist(2, 1);
    dist << 1, 0;
    const Matrix fused = assemble_cost_const(source, target, dist);
    CHECK(fused(0, 0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(fused(1, 0) == doctest::Approx(0.5).epsilon(1e-14));

    Matrix bad(3, 1);
    bad.setZero();
    CHECK_THROWS_AS(assemble_cost_const(source, target, bad), shape_error);
}

TEST_CASE("assemble_cost_const is linear in the feature distance") {
    Rng rng(3);
    const Graph a = Graph::with_uniform_dist(oracles::random_symmetric(4, 1.0, rng));
    const Graph b = Graph::with_uniform_dist(oracles::random_symmetric(3, 1.0, rng));
    Matrix d = Matrix::NullaryExpr(4, 3, [&](Eigen::Index, Eigen::Index) {
        return rng.uniform01();
    });
    const Matrix base = assemble_cost_const(a, b);
    const Matrix fused = assemble_cost_const(a, b, d);
    CHECK((fused - base - d).cwiseAbs().maxCoeff() <= 1e-14);

    const Matrix weighted = assemble_cost_const(a, b, d, 0.25);
    CHECK((weighted - base - 0.25 * d).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("gw_cost examples") {
    const Graph g = two_cycle();
    const Matrix cost = assemble_cost_const(g, g);

    Coupling identity{Matrix::Identity(2, 2) / 2.0, g.node_dist, g.node_dist};
    CHECK(gw_cost(g, g, cost, identity) == doctest::Approx(0.0).epsilon(1e-14));

    Coupling uniform{Matrix::Constant(2, 2, 0.25), g.node_dist, g.node_dist};
    CHECK(gw_cost(g, g, cost, uniform) == doctest::Approx(0.5).epsilon(1e-12));

    Matrix heavy(2, 2);
    heavy << 0, 2, 2, 0;
    const Graph source = Graph::with_uniform_dist(heavy);
    Matrix single(1, 1);
    single << 0;
    const Graph target = Graph::with_uniform_dist(single);
    Coupling forced{Vector::Constant(2, 0.5), source.node_dist, target.node_dist};
    CHECK(gw_cost(source, target, assemble_cost_const(source, target), forced) ==
          doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(gw_cost(g, g, Matrix::Zero(3, 2), identity), shape_error);
}

TEST_CASE("gw_cost agrees with the quadruple sum on feasible couplings") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const int ns = 3 + static_cast<int>(rng.uniform_int(4));
        const int nt = 2 + static_cast<int>(rng.uniform_int(4));
        const Graph a = Graph::with_uniform_dist(oracles::random_symmetric(ns, 2.0, rng));
        const Graph b = Graph::with_uniform_dist(oracles::random_symmetric(nt, 2.0, rng));
        const Matrix plan = oracles::random_coupling(a.node_dist, b.node_dist, rng);
        const Coupling coupling{plan, a.node_dist, b.node_dist};
        const double via_library = gw_cost(a, b, assemble_cost_const(a, b), coupling);
        const double via_oracle = oracles::quad_gw_cost(a.adjacency, b.adjacency, plan);
        CHECK(via_library == doctest::Approx(via_oracle).epsilon(1e-10));
        CHECK(via_library >= 0.0);
    }
}

TEST_CASE("gw_cost of a graph with itself under the identity coupling is zero") {
    Rng rng(5);
    for (int n : {2, 5, 9}) {
        const Graph g = Graph::with_uniform_dist(oracles::random_symmetric(n, 3.0, rng));
        Coupling identity{Matrix::Identity(n, n) / n, g.node_dist, g.node_dist};
        CHECK(gw_cost(g, g, assemble_cost_const(g, g), identity) <= 1e-12);
    }
}

TEST_CASE("feature_distance examples and symmetry") {
    Matrix fs(2, 1), ft(1, 1);
    fs << 1, 0;
    ft << 0;
    const Matrix d = feature_distance(fs, ft);
    CHECK(d(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d(1, 0) == doctest::Approx(0.0).epsilon(1e-14));

    Matrix fa(1, 2), fb(1, 2);
    fa << 1, 0;
    fb << 0, 1;
    CHECK(feature_distance(fa, fb)(0, 0) == doctest::Approx(2.0).epsilon(1e-14));

    Rng rng(21);
    Matrix f = Matrix::NullaryExpr(5, 3, [&](Eigen::Index, Eigen::Index) { return rng.normal(); });
    const Matrix self = feature_distance(f, f);
    CHECK(self.diagonal().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((self - self.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(self.minCoeff() >= 0.0);

    CHECK_THROWS_AS(feature_distance(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), shape_error);
}

TEST_CASE("graph validation catches broken invariants") {
    CHECK_THROWS_AS(Graph(Matrix::Zero(2, 3), Vector::Constant(2, 0.5)).validate(), shape_error);

    Matrix neg(2, 2);
    neg << 0, -1, 0, 0;
    CHECK_THROWS_AS(Graph(neg, Vector::Constant(2, 0.5)).validate(), std::invalid_argument);

    CHECK_THROWS_AS(Graph(Matrix::Zero(2, 2), Vector::Constant(2, 0.6)).validate(),
                    std::invalid_argument);

    Graph with_features(Matrix::Zero(2, 2), Vector::Constant(2, 0.5), Matrix::Zero(3, 1));
    CHECK_THROWS_AS(with_features.validate(), shape_error);

    CHECK_NOTHROW(two_cycle().validate());
}

TEST_CASE("coupling residuals quantify feasibility") {
    const Vector mu2 = Vector::Constant(2, 0.5);
    Coupling exact{Matrix::Constant(2, 2, 0.25), mu2, mu2};
    CHECK(exact.row_marginal_residual() <= 1e-15);
    CHECK(exact.col_marginal_residual() <= 1e-15);

    Matrix skew(2, 2);
    skew << 0.5, 0.0, 0.0, 0.5;
    Coupling biased{skew, mu2, Vector(Vector::Constant(2, 0.5))};
    CHECK(biased.row_marginal_residual() == doctest::Approx(0.0));
    Coupling broken{Matrix::Constant(2, 2, 0.3), mu2, mu2};
    CHECK(broken.row_marginal_residual() == doctest::Approx(0.2).epsilon(1e-12));
}

// SPDX-License-Identifier: Apache-2.0
#include "gwf/solvers.hpp"

#include <cmath>
#include <limits>

#include "gwf/graph_ops.hpp"

namespace gwf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// logsumexp down each column; -inf marks an all-zero column.
Vector col_logsumexp(const Matrix& m) {
    Vector out(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double mx = m.col(j).maxCoeff();
        out[j] = (mx == kNegInf) ? kNegInf
                                 : mx + std::log((m.col(j).array() - mx).exp().sum());
    }
    return out;
}

Vector row_logsumexp(const Matrix& m) {
    Vector out(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double mx = m.row(i).maxCoeff();
        out[i] = (mx == kNegInf) ? kNegInf
                                 : mx + std::log((m.row(i).array() - mx).exp().sum());
    }
    return out;
}

Matrix add_rowwise(const Matrix& m, const Vector& per_row) {
    return m.colwise() + per_row;
}

Matrix add_colwise(const Matrix& m, const Vector& per_col) {
    return m.rowwise() + per_col.transpose();
}

void check_exponent(const Matrix& x, const char* solver, int iteration) {
    if (!x.allFinite())
        throw numerical_error(std::string(solver) + ": non-finite exponent at iteration " +
                              std::to_string(iteration) + " (gamma too small for the cost scale?)");
}

void check_alive(const Vector& lse, const char* solver, const char* what, int iteration) {
    for (Eigen::Index i = 0; i < lse.size(); ++i) {
        if (lse[i] == kNegInf)
            throw degenerate_error(std::string(solver) + ": zero " + what + " " +
                                   std::to_string(i) + " in scaling kernel at iteration " +
                                   std::to_string(iteration));
    }
}

Matrix initial_plan(const Vector& mu_s, const Vector& mu_t, const SolverConfig& config) {
    if (config.init_coupling) {
        const Matrix& t0 = *config.init_coupling;
        if (t0.rows() != mu_s.size() || t0.cols() != mu_t.size())
            throw shape_error("init_coupling shape does not match the graph pair");
        if ((t0.array() < 0.0).any())
            throw std::invalid_argument("init_coupling entries must be nonnegative");
        return t0;
    }
    Matrix t0 = mu_s * mu_t.transpose();
    if (config.jitter > 0.0) {
        Rng rng(config.jitter_seed);
        const double scale = config.jitter * std::min(mu_s.minCoeff(), mu_t.minCoeff());
        for (Eigen::Index j = 0; j < t0.cols(); ++j)
            for (Eigen::Index i = 0; i < t0.rows(); ++i) t0(i, j) += scale * rng.uniform01();
        // one Sinkhorn rescale, rows last so the row marginals stay exact
        const Vector colsum = t0.colwise().sum();
        t0 = t0 * (mu_t.array() / colsum.array()).matrix().asDiagonal();
        const Vector rowsum = t0.rowwise().sum();
        t0 = (mu_s.array() / rowsum.array()).matrix().asDiagonal() * t0;
    }
    return t0;
}

struct ProblemData {
    Matrix cost_const;
    Vector log_mu_s;
    Vector log_mu_t;
};

ProblemData prepare(const Graph& source, const Graph& target, const SolverConfig& config,
                    const std::optional<Matrix>& feature_dist) {
    if (config.gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    if (config.inner_iters < 0) throw std::invalid_argument("inner_iters must be nonnegative");
    if (config.jitter < 0.0) throw std::invalid_argument("jitter must be nonnegative");
    ProblemData d;
    d.cost_const = assemble_cost_const(source, target, feature_dist);
    d.log_mu_s = source.node_dist.array().log();
    d.log_mu_t = target.node_dist.array().log();
    return d;
}

double plan_cost(const Matrix& cost_const, const Matrix& c_s, const Matrix& c_t,
                 const Matrix& plan) {
    const Matrix cost = cost_const - 2.0 * c_s * plan * c_t.transpose();
    const double value = (cost.array() * plan.array()).sum();
    return value < 0.0 ? 0.0 : value;
}

}  // namespace

SolverResult gwd_ppa(const Graph& source, const Graph& target, const SolverConfig& config,
                     const std::optional<Matrix>& feature_dist) {
    if (config.kind != SolverKind::ppa)
        throw std::invalid_argument("gwd_ppa called with a non-PPA config");
    const ProblemData d = prepare(source, target, config, feature_dist);
    const Matrix& c_s = source.adjacency;
    const Matrix& c_t = target.adjacency;

    Matrix plan = initial_plan(source.node_dist, target.node_dist, config);
    Matrix log_plan = plan.array().log();
    Vector log_a = d.log_mu_s;

    SolverResult result;
    result.cost_trace.reserve(config.inner_iters + 1);
    // the per-iterate cost matrix doubles as the next proximal exponent
    Matrix cost = d.cost_const - 2.0 * c_s * plan * c_t.transpose();
    result.cost_trace.push_back(std::max((cost.array() * plan.array()).sum(), 0.0));

    // Iterates are kept in log scale: the kernel spans e^(cost/gamma) orders
    // of magnitude, far beyond what linear-domain scalings survive.
    for (int m = 0; m < config.inner_iters; ++m) {
        const Matrix exponent = -cost / config.gamma;
        check_exponent(exponent, "gwd_ppa", m);
        const Matrix log_kernel = exponent + log_plan;

        const Vector col_lse = col_logsumexp(add_rowwise(log_kernel, log_a));
        check_alive(col_lse, "gwd_ppa", "column", m);
        const Vector log_b = d.log_mu_t - col_lse;

        const Vector row_lse = row_logsumexp(add_colwise(log_kernel, log_b));
        check_alive(row_lse, "gwd_ppa", "row", m);
        log_a = d.log_mu_s - row_lse;

        log_plan = add_colwise(add_rowwise(log_kernel, log_a), log_b);
        plan = log_plan.array().exp();
        cost = d.cost_const - 2.0 * c_s * plan * c_t.transpose();
        result.cost_trace.push_back(std::max((cost.array() * plan.array()).sum(), 0.0));
    }

    result.coupling = Coupling{plan, source.node_dist, target.node_dist};
    result.sq_discrepancy = result.cost_trace.back();
    return result;
}

SolverResult gwd_badmm(const Graph& source, const Graph& target, const SolverConfig& config,
                       const std::optional<Matrix>& feature_dist) {
    if (config.kind != SolverKind::badmm)
        throw std::invalid_argument("gwd_badmm called with a non-BADMM config");
    const ProblemData d = prepare(source, target, config, feature_dist);
    const Matrix& c_s = source.adjacency;
    const Matrix& c_t = target.adjacency;

    Matrix plan = initial_plan(source.node_dist, target.node_dist, config);
    Matrix log_plan = plan.array().log();
    Matrix dual = Matrix::Zero(plan.rows(), plan.cols());
    Matrix aux = plan;

    SolverResult result;
    result.cost_trace.reserve(config.inner_iters + 1);
    result.cost_trace.push_back(plan_cost(d.cost_const, c_s, c_t, plan));

    for (int m = 0; m < config.inner_iters; ++m) {
        // auxiliary update, exact column marginals
        const Matrix exp1 = (2.0 * c_s.transpose() * plan * c_t + dual) / config.gamma;
        check_exponent(exp1, "gwd_badmm", m);
        const Matrix log_kernel1 = exp1 + log_plan;
        const Vector col_lse = col_logsumexp(log_kernel1);
        check_alive(col_lse, "gwd_badmm", "column", m);
        const Matrix log_aux = add_colwise(log_kernel1, d.log_mu_t - col_lse);
        aux = log_aux.array().exp();

        // plan update, exact row marginals
        const Matrix exp2 = -(d.cost_const - 2.0 * c_s * aux * c_t.transpose() + dual) / config.gamma;
        check_exponent(exp2, "gwd_badmm", m);
        const Matrix log_kernel2 = exp2 + log_aux;
        const Vector row_lse = row_logsumexp(log_kernel2);
        check_alive(row_lse, "gwd_badmm", "row", m);
        log_plan = add_rowwise(log_kernel2, d.log_mu_s - row_lse);
        plan = log_plan.array().exp();

        dual += config.gamma * (plan - aux);
        result.cost_trace.push_back(plan_cost(d.cost_const, c_s, c_t, plan));
    }

    result.coupling = Coupling{plan, source.node_dist, target.node_dist};
    result.sq_discrepancy = result.cost_trace.back();
    if (config.inner_iters > 0) {
        result.primal_residual = (plan - aux).lpNorm<1>();
        result.aux_col_residual =
            (aux.transpose() * Vector::Ones(aux.rows()) - target.node_dist).lpNorm<1>();
    }
    return result;
}

SolverResult gwd(const Graph& source, const Graph& target, const SolverConfig& config,
                 const std::optional<Matrix>& feature_dist) {
    return config.kind == SolverKind::ppa ? gwd_ppa(source, target, config, feature_dist)
                                          : gwd_badmm(source, target, config, feature_dist);
}

}  // namespace gwf

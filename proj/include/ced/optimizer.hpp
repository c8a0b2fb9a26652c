#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ced/common.hpp"

namespace ced {

/// Per-period asset returns across scenarios: T' scenarios x N periods x
/// m assets, rectangular.
struct ScenarioSet {
    std::size_t n_scenarios = 0;
    std::size_t n_periods = 0;
    std::size_t n_assets = 0;
    std::vector<double> returns;  // [i * N * m + j * m + a]

    double at(std::size_t scenario, std::size_t period, std::size_t asset) const {
        return returns[(scenario * n_periods + period) * n_assets + asset];
    }
    double& at(std::size_t scenario, std::size_t period, std::size_t asset) {
        return returns[(scenario * n_periods + period) * n_assets + asset];
    }
    void resize(std::size_t t, std::size_t n, std::size_t m) {
        n_scenarios = t;
        n_periods = n;
        n_assets = m;
        returns.assign(t * n * m, 0.0);
    }
};

struct OptimizerConstraints {
    bool budget = true;      // sum w = 1
    bool long_only = true;   // w >= 0
    std::optional<double> min_return;  // mean per-period portfolio return >= target
};

/// Sparse linear program over the variable blocks w (m), t (1), z (T'),
/// u (T'*N). u_{i,0} is the constant 0, not a variable. Non-free variables
/// have lower bound 0.
struct LinearProgram {
    enum class RowKind : char { ge, le, eq };
    struct Row {
        std::vector<std::pair<std::size_t, double>> coeffs;
        double rhs = 0.0;
        RowKind kind = RowKind::ge;
    };

    std::size_t n_vars = 0;
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<bool> is_free;

    // Block layout of the drawdown program.
    std::size_t n_assets = 0, n_scenarios = 0, n_periods = 0;
    std::size_t w_offset = 0, t_index = 0, z_offset = 0, u_offset = 0;
    std::size_t tail_count = 0;  // K

    std::size_t u_index(std::size_t scenario, std::size_t period_1based) const {
        return u_offset + scenario * n_periods + (period_1based - 1);
    }
};

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

std::string solve_status_name(SolveStatus s);

struct LpSolution {
    SolveStatus status = SolveStatus::iteration_limit;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
};

struct OptResult {
    std::vector<double> weights;
    double objective = 0.0;
    SolveStatus status = SolveStatus::iteration_limit;
    std::size_t iterations = 0;
};

/// Drawdown-minimization program: minimize t + (1/K) * sum_i z_i subject to
///   z_i + t - u_{i,j} >= 0          and
///   u_{i,j} - u_{i,j-1} + w'r_{i,j} >= 0        (u_{i,0} = 0)
/// for every scenario i and period j, plus z >= 0, u >= 0, the budget row,
/// optional long-only bounds and optional minimum-mean-return row.
/// K = floor(T' * (1 - alpha)); K = 0 is rejected.
LinearProgram build_ced_lp(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                           const OptimizerConstraints& constraints = {});

struct SolverOptions {
    std::size_t max_iterations = 50000;
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
};

/// Two-phase primal simplex with a dense basis inverse; deterministic
/// pivoting (largest reduced cost, ties to the lowest index, Bland's rule
/// after a degeneracy stall). Self-contained; no external solver.
LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

/// Builds and solves the drawdown program; weights and the minimized
/// tail-mean drawdown are extracted from the LP solution.
OptResult minimize_ced(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                       const OptimizerConstraints& constraints = {},
                       const SolverOptions& options = {});

/// Tail mean at alpha of the per-scenario maximum drawdowns of the additive
/// portfolio path at fixed weights. The LP objective must match this at the
/// optimal weights.
double scenario_ced_estimate(const ScenarioSet& scenarios,
                             std::span<const double> weights,
                             ConfidenceLevel alpha);

struct GridResult {
    std::vector<double> weights;
    double objective = 0.0;
    std::size_t evaluations = 0;
};

/// Exhaustive search over the long-only simplex grid with `grid_steps`
/// subdivisions per axis (weights k/grid_steps). Verification oracle for the
/// LP route.
GridResult brute_force_ced(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                           std::size_t grid_steps);

/// Mean per-period return of each asset across all scenarios (the expected
/// return used by the min-return constraint).
std::vector<double> scenario_mean_returns(const ScenarioSet& scenarios);

/// One solve per return target; infeasible targets yield per-point infeasible
/// results without aborting the rest.
std::vector<OptResult> efficient_frontier(const ScenarioSet& scenarios,
                                          ConfidenceLevel alpha,
                                          const std::vector<double>& return_targets,
                                          const OptimizerConstraints& constraints = {},
                                          const SolverOptions& options = {});

}  // namespace ced

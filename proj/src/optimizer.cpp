#include "ced/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ced/drawdown.hpp"
#include "ced/riskmeasures.hpp"

namespace ced {

namespace {

void validate_scenarios(const ScenarioSet& s) {
    if (s.n_scenarios == 0 || s.n_periods == 0 || s.n_assets == 0)
        throw precondition_error("empty scenario set");
    if (s.returns.size() != s.n_scenarios * s.n_periods * s.n_assets)
        throw precondition_error("scenario set is not rectangular");
    for (double r : s.returns)
        if (!std::isfinite(r)) throw precondition_error("non-finite scenario return");
}

}  // namespace

LinearProgram build_ced_lp(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                           const OptimizerConstraints& constraints) {
    validate_scenarios(scenarios);
    const std::size_t t_prime = scenarios.n_scenarios;
    const std::size_t n = scenarios.n_periods;
    const std::size_t m = scenarios.n_assets;
    const std::size_t k = tail_size(t_prime, alpha);
    if (k == 0)
        throw precondition_error("tail is empty: floor(T' * (1 - alpha)) = 0");

    LinearProgram lp;
    lp.n_assets = m;
    lp.n_scenarios = t_prime;
    lp.n_periods = n;
    lp.tail_count = k;
    lp.w_offset = 0;
    lp.t_index = m;
    lp.z_offset = m + 1;
    lp.u_offset = m + 1 + t_prime;
    lp.n_vars = m + 1 + t_prime + t_prime * n;

    lp.objective.assign(lp.n_vars, 0.0);
    lp.objective[lp.t_index] = 1.0;
    const double z_coef = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < t_prime; ++i) lp.objective[lp.z_offset + i] = z_coef;

    lp.is_free.assign(lp.n_vars, false);
    lp.is_free[lp.t_index] = true;
    if (!constraints.long_only)
        for (std::size_t a = 0; a < m; ++a) lp.is_free[lp.w_offset + a] = true;

    lp.rows.reserve(2 * t_prime * n + 2);
    for (std::size_t i = 0; i < t_prime; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t u_ij = lp.u_index(i, j);

            LinearProgram::Row cap;  // z_i + t - u_{i,j} >= 0
            cap.coeffs = {{lp.z_offset + i, 1.0}, {lp.t_index, 1.0}, {u_ij, -1.0}};
            lp.rows.push_back(std::move(cap));

            LinearProgram::Row rec;  // u_{i,j} - u_{i,j-1} + w'r_{i,j} >= 0
            rec.coeffs.push_back({u_ij, 1.0});
            if (j >= 2) rec.coeffs.push_back({lp.u_index(i, j - 1), -1.0});
            for (std::size_t a = 0; a < m; ++a) {
                const double r = scenarios.at(i, j - 1, a);
                if (r != 0.0) rec.coeffs.push_back({lp.w_offset + a, r});
            }
            lp.rows.push_back(std::move(rec));
        }
    }

    if (constraints.budget) {
        LinearProgram::Row budget;
        budget.kind = LinearProgram::RowKind::eq;
        budget.rhs = 1.0;
        for (std::size_t a = 0; a < m; ++a) budget.coeffs.push_back({lp.w_offset + a, 1.0});
        lp.rows.push_back(std::move(budget));
    }
    if (constraints.min_return) {
        const auto means = scenario_mean_returns(scenarios);
        LinearProgram::Row target;
        target.kind = LinearProgram::RowKind::ge;
        target.rhs = *constraints.min_return;
        for (std::size_t a = 0; a < m; ++a)
            target.coeffs.push_back({lp.w_offset + a, means[a]});
        lp.rows.push_back(std::move(target));
    }
    return lp;
}

double scenario_ced_estimate(const ScenarioSet& scenarios,
                             std::span<const double> weights, ConfidenceLevel alpha) {
    validate_scenarios(scenarios);
    if (weights.size() != scenarios.n_assets)
        throw precondition_error("weight count does not match scenario assets");
    std::vector<double> mdds(scenarios.n_scenarios);
    PeriodReturnSeries port;
    port.values.resize(scenarios.n_periods);
    for (std::size_t i = 0; i < scenarios.n_scenarios; ++i) {
        for (std::size_t j = 0; j < scenarios.n_periods; ++j) {
            double acc = 0.0;
            for (std::size_t a = 0; a < scenarios.n_assets; ++a)
                acc += weights[a] * scenarios.at(i, j, a);
            port.values[j] = acc;
        }
        mdds[i] = max_drawdown_recursive(port);
    }
    return tail_mean(EmpiricalSample(std::move(mdds)), alpha);
}

OptResult minimize_ced(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                       const OptimizerConstraints& constraints,
                       const SolverOptions& options) {
    const LinearProgram lp = build_ced_lp(scenarios, alpha, constraints);
    const LpSolution sol = solve_lp(lp, options);
    OptResult out;
    out.status = sol.status;
    out.iterations = sol.iterations;
    if (sol.status == SolveStatus::optimal) {
        out.weights.assign(sol.x.begin() + lp.w_offset,
                           sol.x.begin() + lp.w_offset + lp.n_assets);
        out.objective = sol.objective;
    }
    return out;
}

std::vector<double> scenario_mean_returns(const ScenarioSet& scenarios) {
    validate_scenarios(scenarios);
    std::vector<double> means(scenarios.n_assets, 0.0);
    for (std::size_t i = 0; i < scenarios.n_scenarios; ++i)
        for (std::size_t j = 0; j < scenarios.n_periods; ++j)
            for (std::size_t a = 0; a < scenarios.n_assets; ++a)
                means[a] += scenarios.at(i, j, a);
    const double count = static_cast<double>(scenarios.n_scenarios * scenarios.n_periods);
    for (double& m : means) m /= count;
    return means;
}

namespace {

void enumerate_simplex(std::size_t m, std::size_t steps, std::vector<std::size_t>& point,
                       std::size_t asset, std::size_t remaining,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (asset + 1 == m) {
        point[asset] = remaining;
        visit(point);
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        point[asset] = k;
        enumerate_simplex(m, steps, point, asset + 1, remaining - k, visit);
    }
}

}  // namespace

GridResult brute_force_ced(const ScenarioSet& scenarios, ConfidenceLevel alpha,
                           std::size_t grid_steps) {
    validate_scenarios(scenarios);
    if (grid_steps == 0) throw precondition_error("grid_steps must be >= 1");
    const std::size_t m = scenarios.n_assets;

    GridResult best;
    best.objective = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> point(m, 0);
    std::vector<double> w(m, 0.0);
    enumerate_simplex(m, grid_steps, point, 0, grid_steps,
                      [&](const std::vector<std::size_t>& p) {
                          for (std::size_t a = 0; a < m; ++a)
                              w[a] = static_cast<double>(p[a]) /
                                     static_cast<double>(grid_steps);
                          const double obj = scenario_ced_estimate(scenarios, w, alpha);
                          ++best.evaluations;
                          if (obj < best.objective) {
                              best.objective = obj;
                              best.weights = w;
                          }
                      });
    return best;
}

std::vector<OptResult> efficient_frontier(const ScenarioSet& scenarios,
                                          ConfidenceLevel alpha,
                                          const std::vector<double>& return_targets,
                                          const OptimizerConstraints& constraints,
                                          const SolverOptions& options) {
    std::vector<OptResult> out;
    out.reserve(return_targets.size());
    for (const double target : return_targets) {
        OptimizerConstraints c = constraints;
        c.min_return = target;
        out.push_back(minimize_ced(scenarios, alpha, c, options));
    }
    return out;
}

}  // namespace ced

#include "ced/portfolio.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace ced {

namespace {

void validate_targets(const std::vector<double>& w, std::size_t m) {
    if (w.size() != m)
        throw precondition_error("target weight count does not match asset count");
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw precondition_error("fixed-mix targets must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw precondition_error("fixed-mix targets must sum to 1");
}

AssetMatrix slice_rows(const AssetMatrix& m, std::size_t begin, std::size_t end) {
    AssetMatrix out;
    out.asset_names = m.asset_names;
    out.columns.resize(m.cols());
    for (std::size_t a = 0; a < m.cols(); ++a)
        out.columns[a].assign(m.columns[a].begin() + begin, m.columns[a].begin() + end);
    return out;
}

RiskReport report_for(const AssetMatrix& returns, const std::vector<double>& weights,
                      const ParitySpec& spec) {
    switch (spec.measure) {
        case RiskMeasureKind::volatility:
            return vol_contributions(returns, weights);
        case RiskMeasureKind::expected_shortfall:
            return es_mrc(returns, weights, ConfidenceLevel(spec.alpha));
        case RiskMeasureKind::ced: {
            std::vector<CumulativeReturnPath> paths(returns.cols());
            for (std::size_t a = 0; a < returns.cols(); ++a)
                paths[a] = periods_to_cumulative_path(
                    PeriodReturnSeries{returns.columns[a]}, PathMode::additive);
            return ced_mrc(paths, weights, spec.ced_path_len, ConfidenceLevel(spec.alpha));
        }
    }
    throw precondition_error("unknown risk measure");
}

}  // namespace

FixedMixResult fixed_mix(const AssetMatrix& asset_returns, const RebalancePolicy& policy) {
    const std::size_t m = asset_returns.cols();
    const std::size_t n = asset_returns.rows();
    if (n == 0 || m == 0) throw precondition_error("empty return panel");
    if (policy.frequency == 0) throw precondition_error("rebalance frequency must be >= 1");
    validate_targets(policy.target_weights, m);

    FixedMixResult out;
    out.portfolio.values.resize(n);
    out.weight_history.resize(n);

    std::vector<double> w = policy.target_weights;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0 && t % policy.frequency == 0) w = policy.target_weights;
        out.weight_history[t] = w;

        double port_r = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            const double r = asset_returns.columns[a][t];
            if (r <= -1.0)
                throw precondition_error("asset return <= -1 at period " +
                                         std::to_string(t) + "; NAV wipeout undefined");
            port_r += w[a] * r;
        }
        out.portfolio.values[t] = port_r;

        // Drift: each sleeve grows by its own return, renormalized by the
        // portfolio growth.
        const double growth = 1.0 + port_r;
        for (std::size_t a = 0; a < m; ++a)
            w[a] = w[a] * (1.0 + asset_returns.columns[a][t]) / growth;
    }
    return out;
}

ParityDate solve_parity_weights(const AssetMatrix& asset_returns, const ParitySpec& spec) {
    const std::size_t m = asset_returns.cols();
    if (m == 0) throw precondition_error("empty return panel");
    const double equal = 1.0 / static_cast<double>(m);

    ParityDate date;
    date.weights.assign(m, equal);

    // Iterate w toward normalize(1 / mrc(w)); the fixed point has equal
    // rc_i = w_i * mrc_i. Smooth measures converge to machine precision; the
    // tail measures are piecewise in w (the tail set swaps members), so the
    // best iterate is kept and the run stops once it stalls. A parity point
    // sitting exactly on a tail-swap boundary leaves a residual floor equal
    // to the local frc jump; that floor is intrinsic to the discrete
    // estimator, not to the iteration.
    std::vector<double> w(m, equal);
    constexpr double damping = 0.5;
    constexpr double stop_tol = 1e-12;
    constexpr std::size_t stall_limit = 50;
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best_w = w;
    std::size_t stall = 0;
    for (std::size_t it = 0; it < spec.max_iterations; ++it) {
        RiskReport report = report_for(asset_returns, w, spec);
        double residual = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            residual = std::max(residual, std::abs(report.frc[a] - equal));
        if (residual < best_residual) {
            best_residual = residual;
            best_w = w;
            stall = 0;
        } else if (++stall >= stall_limit) {
            break;
        }
        if (residual <= stop_tol) break;

        bool bad_mrc = false;
        for (std::size_t a = 0; a < m; ++a)
            if (!(report.mrc[a] > 0.0)) bad_mrc = true;
        if (bad_mrc) {
            date.equal_weight_fallback = true;
            date.weights.assign(m, equal);
            date.residual = std::numeric_limits<double>::quiet_NaN();
            try {
                RiskReport eq = report_for(asset_returns, date.weights, spec);
                date.residual = 0.0;
                for (std::size_t a = 0; a < m; ++a)
                    date.residual = std::max(date.residual, std::abs(eq.frc[a] - equal));
            } catch (const precondition_error&) {
                // degenerate panel: even the equal-weight portfolio carries
                // no measurable risk
            }
            date.converged = false;
            return date;
        }

        std::vector<double> candidate(m);
        double csum = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            candidate[a] = 1.0 / report.mrc[a];
            csum += candidate[a];
        }
        double wsum = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            w[a] = (1.0 - damping) * w[a] + damping * candidate[a] / csum;
            wsum += w[a];
        }
        for (std::size_t a = 0; a < m; ++a) w[a] /= wsum;
    }

    date.weights = best_w;
    date.residual = best_residual;
    date.converged = best_residual <= spec.certificate_tol;
    return date;
}

ParityResult risk_parity(const AssetMatrix& asset_returns, const ParitySpec& spec) {
    const std::size_t m = asset_returns.cols();
    const std::size_t n = asset_returns.rows();
    if (spec.estimation_window < 2) throw precondition_error("estimation window too short");
    if (n < spec.estimation_window + 1)
        throw precondition_error("need at least estimation_window + 1 periods of history");
    if (spec.rebalance_frequency == 0)
        throw precondition_error("rebalance frequency must be >= 1");

    ParityResult out;
    const std::size_t first = spec.estimation_window;
    out.portfolio.values.reserve(n - first);
    out.weight_history.reserve(n - first);

    std::vector<double> w(m, 1.0 / static_cast<double>(m));
    for (std::size_t t = first; t < n; ++t) {
        if ((t - first) % spec.rebalance_frequency == 0) {
            const AssetMatrix window = slice_rows(asset_returns, t - spec.estimation_window, t);
            ParityDate date = solve_parity_weights(window, spec);
            date.period = t;
            w = date.weights;
            out.dates.push_back(std::move(date));
        }
        double port_r = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            const double r = asset_returns.columns[a][t];
            if (r <= -1.0) throw precondition_error("asset return <= -1; NAV wipeout undefined");
            port_r += w[a] * r;
        }
        out.weight_history.push_back(w);
        out.portfolio.values.push_back(port_r);
        const double growth = 1.0 + port_r;
        for (std::size_t a = 0; a < m; ++a)
            w[a] = w[a] * (1.0 + asset_returns.columns[a][t]) / growth;
    }
    return out;
}

CrossReport parity_cross_report(const AssetMatrix& asset_returns,
                                const std::vector<RiskMeasureKind>& measures,
                                const ParitySpec& base_spec, std::size_t asset_index) {
    if (asset_index >= asset_returns.cols())
        throw precondition_error("asset index out of range");
    CrossReport out;
    out.asset_index = asset_index;
    out.portfolio_measures = measures;
    out.eval_measures = measures;
    out.frc.resize(measures.size());
    out.converged.resize(measures.size());
    out.residuals.resize(measures.size());
    for (std::size_t p = 0; p < measures.size(); ++p) {
        ParitySpec spec = base_spec;
        spec.measure = measures[p];
        const ParityDate solved = solve_parity_weights(asset_returns, spec);
        out.converged[p] = solved.converged;
        out.residuals[p] = solved.residual;
        out.frc[p].resize(measures.size());
        for (std::size_t e = 0; e < measures.size(); ++e) {
            ParitySpec eval = base_spec;
            eval.measure = measures[e];
            out.frc[p][e] = report_for(asset_returns, solved.weights, eval).frc[asset_index];
        }
    }
    return out;
}

}  // namespace ced

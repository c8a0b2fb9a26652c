#pragma once

#include <cstddef>
#include <vector>

#include "ced/attribution.hpp"

namespace ced {

/// Fixed-mix targets rebalanced every `frequency` periods (21 ~ monthly on
/// daily data). Targets are long-only and sum to 1.
struct RebalancePolicy {
    std::vector<double> target_weights;
    std::size_t frequency = 21;
};

struct FixedMixResult {
    PeriodReturnSeries portfolio;
    std::vector<std::vector<double>> weight_history;  // weights applied in period t
};

/// Compound NAV accounting: weights drift with relative asset performance
/// between rebalances and snap back to the targets on rebalance dates. The
/// period return is w(t)'r(t) with w(t) the pre-period weights. Rejects any
/// asset return <= -1.
FixedMixResult fixed_mix(const AssetMatrix& asset_returns, const RebalancePolicy& policy);

struct ParitySpec {
    RiskMeasureKind measure = RiskMeasureKind::volatility;
    double alpha = 0.9;
    std::size_t estimation_window = 756;  // 3 years of daily periods
    std::size_t rebalance_frequency = 21;
    std::size_t ced_path_len = 125;
    std::size_t max_iterations = 500;
    double certificate_tol = 1e-4;  // max |frc - 1/m| certified at each date
};

struct ParityDate {
    std::size_t period = 0;  // first period the weights apply to
    std::vector<double> weights;
    double residual = 0.0;  // max |frc - 1/m| at the solved weights
    bool converged = false;
    bool equal_weight_fallback = false;  // non-positive mrc encountered
};

struct ParityResult {
    std::vector<ParityDate> dates;
    PeriodReturnSeries portfolio;
    std::vector<std::vector<double>> weight_history;
};

/// Equal-risk-contribution weights re-solved at every rebalance date from the
/// trailing estimation window, applied forward with fixed-mix drift
/// accounting. The damped fixed-point iteration renormalizes toward
/// 1/mrc(w); convergence is certified by the frc residual.
ParityResult risk_parity(const AssetMatrix& asset_returns, const ParitySpec& spec);

/// Static equal-risk weights on a whole sample (helper for cross reports and
/// tests). Throws on non-convergence.
ParityDate solve_parity_weights(const AssetMatrix& asset_returns, const ParitySpec& spec);

struct CrossReport {
    std::vector<RiskMeasureKind> portfolio_measures;  // row per parity portfolio
    std::vector<RiskMeasureKind> eval_measures;       // column per measure
    std::vector<std::vector<double>> frc;  // frc of `asset_index` under eval measure
    std::vector<bool> converged;           // per parity portfolio
    std::vector<double> residuals;
    std::size_t asset_index = 0;
};

/// Builds one static parity portfolio per measure and evaluates the
/// fractional contribution of one asset under every measure. Diagonal
/// entries are 1/m when the row's parity solve converged (its flag and
/// residual are reported alongside).
CrossReport parity_cross_report(const AssetMatrix& asset_returns,
                                const std::vector<RiskMeasureKind>& measures,
                                const ParitySpec& base_spec,
                                std::size_t asset_index = 0);

}  // namespace ced

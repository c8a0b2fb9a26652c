#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ced/riskmeasures.hpp"

namespace ced {

enum class RiskMeasureKind { volatility, expected_shortfall, ced };

std::string risk_measure_name(RiskMeasureKind kind);

/// Euler decomposition of one risk measure across assets:
///   rc_i = w_i * mrc_i,  sum_i rc_i = total,  frc_i = rc_i / total,
///   gen_corr_i = mrc_i / standalone_i.
/// gen_corr is NaN where the standalone risk is zero (flagged by
/// x_sigma_rho). tail_indices records the scenario/window set the tail
/// estimators conditioned on (empty for volatility).
struct RiskReport {
    RiskMeasureKind measure = RiskMeasureKind::volatility;
    double total = 0.0;
    std::vector<double> weights;
    std::vector<double> mrc;
    std::vector<double> rc;
    std::vector<double> frc;
    std::vector<double> standalone;
    std::vector<double> gen_corr;
    std::vector<std::size_t> tail_indices;

    std::size_t n_assets() const { return mrc.size(); }
};

/// Covariance-based volatility contributions: mrc_i = Cov(X_i, P) / sd(P),
/// scaled by sqrt(periods_per_year). Rejects zero portfolio variance.
RiskReport vol_contributions(const AssetMatrix& asset_returns,
                             std::span<const double> weights,
                             double periods_per_year = 1.0);

/// Shortfall contributions: the K worst portfolio-loss periods are selected
/// once; mrc_i is the mean asset-i loss over exactly that set, so the Euler
/// identity holds in sample.
RiskReport es_mrc(const AssetMatrix& asset_returns, std::span<const double> weights,
                  ConfidenceLevel alpha);

/// Drawdown contributions: rolling windows of the weighted portfolio path are
/// scanned for their maximum drawdowns; over the K worst windows, mrc_i is
/// the mean drop of asset i between the portfolio's own peak and trough
/// indices. Zero-drawdown windows in the tail contribute 0.
RiskReport ced_mrc(const std::vector<CumulativeReturnPath>& asset_paths,
                   std::span<const double> weights, std::size_t window_len,
                   ConfidenceLevel alpha, std::size_t step = 1);

struct XSigmaRhoRow {
    double weight = 0.0;
    double standalone = 0.0;
    double correlation = 0.0;
    double rc = 0.0;
    bool degenerate = false;  // standalone == 0 with rc != 0
};

/// Decomposes each rc_i into weight x standalone x generalized correlation.
std::vector<XSigmaRhoRow> x_sigma_rho(const RiskReport& report);

struct RollingReport {
    std::size_t start = 0;  // first period index of the evaluation window
    std::size_t end = 0;    // one past the last period index
    RiskReport report;
};

/// One report per rolling evaluation window of `window` periods, advanced by
/// `eval_step`. For the drawdown measure, sub-paths of `ced_path_len` points
/// are carved from each window's additive cumulative path (0 = window / 2).
std::vector<RollingReport> rolling_attribution(const AssetMatrix& asset_returns,
                                               std::span<const double> weights,
                                               RiskMeasureKind measure,
                                               std::size_t window,
                                               ConfidenceLevel alpha,
                                               std::size_t ced_path_len = 0,
                                               std::size_t eval_step = 1);

}  // namespace ced

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ced/attribution.hpp"

namespace ced {

/// Stationary AR(1): r_t = kappa * r_{t-1} + eps_t, |kappa| < 1, eps Gaussian
/// with standard deviation sigma_eps > 0.
struct AR1Params {
    double kappa = 0.0;
    double sigma_eps = 0.0;
};

/// Simulates the process with r_0 drawn from the stationary law
/// N(0, sigma_eps^2 / (1 - kappa^2)); a nonzero burnin instead starts at 0
/// and discards the first `burnin` draws. Deterministic under a fixed seed.
PeriodReturnSeries ar1_simulate(const AR1Params& params, std::size_t length,
                                std::uint64_t seed, std::size_t burnin = 0);

struct AR1Fit {
    double kappa = 0.0;
    double sigma_eps = 0.0;
    double kappa_se = 0.0;
};

/// Gaussian conditional maximum likelihood with no intercept: kappa is the
/// least-squares slope of r_t on r_{t-1}. Requires length >= 10 and a
/// non-constant series.
AR1Fit fit_ar1(const PeriodReturnSeries& series);

struct SweepRow {
    double kappa = 0.0;
    double volatility = 0.0;
    double es = 0.0;
    double ced = 0.0;
};

/// One simulated series per kappa (independent seeded streams); volatility,
/// expected shortfall and conditional expected drawdown of each.
std::vector<SweepRow> kappa_sweep(const std::vector<double>& kappas, double sigma_eps,
                                  std::size_t length, ConfidenceLevel alpha,
                                  std::size_t window, std::uint64_t seed);

/// Two simulated AR(1) assets held at fixed weights, with risk contributions
/// under all three measures, plus a symmetric control run (kappa = 0, equal
/// innovation scale, equal weights) whose contributions are 1/2 each up to
/// Monte-Carlo noise.
struct TwoAssetStudyConfig {
    double kappa_e = 0.43;
    double kappa_b = 0.35;
    double vol_e = 0.184;  // annualized stationary volatility of asset E
    double vol_b = 0.055;
    double weight_e = 0.6;
    double weight_b = 0.4;
    double periods_per_year = 252.0;
    std::size_t length = 100000;
    std::size_t window = 125;
    double alpha = 0.9;
    std::uint64_t seed = 1;
};

struct TwoAssetStudyResult {
    RiskReport vol;
    RiskReport es;
    RiskReport ced;
    RiskReport vol_residual;
    RiskReport es_residual;
    RiskReport ced_residual;
};

TwoAssetStudyResult two_asset_study(const TwoAssetStudyConfig& config);

struct KappaRiskCorrelation {
    double vol = 0.0;
    double es = 0.0;
    double ced = 0.0;
    std::size_t n_windows = 0;
};

/// Pearson correlations between rolling fitted-kappa values and rolling
/// volatility / ES / CED, all estimated on identical windows of `est_window`
/// periods stepped by `stride`; CED uses sub-paths of `path_len` points
/// within each window.
KappaRiskCorrelation kappa_risk_correlation(const PeriodReturnSeries& series,
                                            std::size_t est_window,
                                            std::size_t path_len,
                                            ConfidenceLevel alpha,
                                            std::size_t stride = 1);

/// Per-period innovation scale for a target annualized stationary volatility.
double sigma_eps_for_annual_vol(double annual_vol, double kappa,
                                double periods_per_year);

}  // namespace ced

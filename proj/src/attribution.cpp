#include "ced/attribution.hpp"

#include <cmath>
#include <limits>

#include "ced/kernels.hpp"

namespace ced {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void check_weights(std::span<const double> weights, std::size_t n_assets) {
    if (weights.size() != n_assets)
        throw precondition_error("weight count " + std::to_string(weights.size()) +
                                 " does not match asset count " +
                                 std::to_string(n_assets));
    for (double w : weights)
        if (!std::isfinite(w)) throw precondition_error("non-finite weight");
}

// Fills rc/frc/gen_corr from mrc, weights, standalone and total.
void finish_report(RiskReport& r) {
    if (r.total == 0.0)
        throw precondition_error("portfolio risk is zero; contributions undefined");
    const std::size_t m = r.mrc.size();
    r.rc.resize(m);
    r.frc.resize(m);
    r.gen_corr.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        r.rc[i] = r.weights[i] * r.mrc[i];
        r.frc[i] = r.rc[i] / r.total;
        r.gen_corr[i] = r.standalone[i] != 0.0 ? r.mrc[i] / r.standalone[i] : nan_value;
    }
}

std::vector<double> column_means(const AssetMatrix& m) {
    std::vector<double> means(m.cols());
    for (std::size_t a = 0; a < m.cols(); ++a) {
        double s = 0.0;
        for (double v : m.columns[a]) s += v;
        means[a] = s / static_cast<double>(m.rows());
    }
    return means;
}

std::vector<const double*> column_pointers(const AssetMatrix& m) {
    std::vector<const double*> ptrs(m.cols());
    for (std::size_t a = 0; a < m.cols(); ++a) ptrs[a] = m.columns[a].data();
    return ptrs;
}

}  // namespace

std::string risk_measure_name(RiskMeasureKind kind) {
    switch (kind) {
        case RiskMeasureKind::volatility: return "vol";
        case RiskMeasureKind::expected_shortfall: return "es";
        case RiskMeasureKind::ced: return "ced";
    }
    return "?";
}

RiskReport vol_contributions(const AssetMatrix& asset_returns,
                             std::span<const double> weights,
                             double periods_per_year) {
    const std::size_t m = asset_returns.cols();
    const std::size_t n = asset_returns.rows();
    if (m == 0 || n < 2)
        throw precondition_error("volatility attribution needs >= 1 asset and >= 2 rows");
    check_weights(weights, m);

    const auto means = column_means(asset_returns);
    // Covariance with the m-1 denominator, matching the volatility estimator.
    std::vector<double> cov(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                s += (asset_returns.columns[a][t] - means[a]) *
                     (asset_returns.columns[b][t] - means[b]);
            cov[a * m + b] = cov[b * m + a] = s / static_cast<double>(n - 1);
        }
    }

    std::vector<double> cov_w(m, 0.0);  // (Sigma w)_i = Cov(X_i, P)
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) cov_w[a] += cov[a * m + b] * weights[b];
    double port_var = 0.0;
    for (std::size_t a = 0; a < m; ++a) port_var += weights[a] * cov_w[a];
    if (!(port_var > 0.0))
        throw precondition_error("zero portfolio variance; contributions undefined");

    const double ann = std::sqrt(periods_per_year);
    const double sd = std::sqrt(port_var);

    RiskReport r;
    r.measure = RiskMeasureKind::volatility;
    r.weights.assign(weights.begin(), weights.end());
    r.total = sd * ann;
    r.mrc.resize(m);
    r.standalone.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        r.mrc[a] = cov_w[a] / sd * ann;
        r.standalone[a] = std::sqrt(cov[a * m + a]) * ann;
    }
    finish_report(r);
    return r;
}

RiskReport es_mrc(const AssetMatrix& asset_returns, std::span<const double> weights,
                  ConfidenceLevel alpha) {
    const std::size_t m = asset_returns.cols();
    const std::size_t n = asset_returns.rows();
    if (m == 0 || n == 0) throw precondition_error("empty return panel");
    check_weights(weights, m);
    const std::size_t k = tail_size(n, alpha);
    if (k == 0)
        throw precondition_error("shortfall tail is empty at this alpha/sample size");

    std::vector<double> port(n);
    const auto cols = column_pointers(asset_returns);
    kernels::weighted_sum(cols, weights, port);
    std::vector<double> losses(n);
    for (std::size_t t = 0; t < n; ++t) losses[t] = -port[t];

    RiskReport r;
    r.measure = RiskMeasureKind::expected_shortfall;
    r.weights.assign(weights.begin(), weights.end());
    r.tail_indices = k_largest_indices(losses, k);

    double total = 0.0;
    for (std::size_t t : r.tail_indices) total += losses[t];
    r.total = total / static_cast<double>(k);

    r.mrc.resize(m);
    r.standalone.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        double s = 0.0;
        for (std::size_t t : r.tail_indices) s += -asset_returns.columns[a][t];
        r.mrc[a] = s / static_cast<double>(k);
        r.standalone[a] =
            expected_shortfall(PeriodReturnSeries{asset_returns.columns[a]}, alpha);
    }
    finish_report(r);
    return r;
}

RiskReport ced_mrc(const std::vector<CumulativeReturnPath>& asset_paths,
                   std::span<const double> weights, std::size_t window_len,
                   ConfidenceLevel alpha, std::size_t step) {
    const std::size_t m = asset_paths.size();
    if (m == 0) throw precondition_error("no asset paths");
    const std::size_t len = asset_paths.front().size();
    for (const auto& p : asset_paths)
        if (p.size() != len)
            throw precondition_error("asset paths must have equal length");
    check_weights(weights, m);

    CumulativeReturnPath portfolio;
    portfolio.values.resize(len);
    std::vector<const double*> cols(m);
    for (std::size_t a = 0; a < m; ++a) cols[a] = asset_paths[a].values.data();
    kernels::weighted_sum(cols, weights, portfolio.values);

    const auto windows = mdd_windows_detailed(portfolio, window_len, step);
    const std::size_t k = tail_size(windows.size(), alpha);
    if (k == 0)
        throw precondition_error("drawdown tail is empty at this alpha/window count");

    std::vector<double> magnitudes(windows.size());
    for (std::size_t w = 0; w < windows.size(); ++w) magnitudes[w] = windows[w].value;

    RiskReport r;
    r.measure = RiskMeasureKind::ced;
    r.weights.assign(weights.begin(), weights.end());
    r.tail_indices = k_largest_indices(magnitudes, k);

    double total = 0.0;
    for (std::size_t w : r.tail_indices) total += magnitudes[w];
    r.total = total / static_cast<double>(k);

    r.mrc.resize(m);
    r.standalone.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto& x = asset_paths[a].values;
        double s = 0.0;
        for (std::size_t w : r.tail_indices) {
            const std::size_t start = w * step;
            // Sentinel (0, 0) windows add x[start] - x[start] = 0.
            s += x[start + windows[w].peak_index] - x[start + windows[w].trough_index];
        }
        r.mrc[a] = s / static_cast<double>(k);
        r.standalone[a] = ced_measure(asset_paths[a], window_len, alpha, step);
    }
    finish_report(r);
    return r;
}

std::vector<XSigmaRhoRow> x_sigma_rho(const RiskReport& report) {
    std::vector<XSigmaRhoRow> rows(report.n_assets());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& row = rows[i];
        row.weight = report.weights[i];
        row.standalone = report.standalone[i];
        row.rc = report.rc[i];
        if (report.standalone[i] == 0.0) {
            row.correlation = nan_value;
            row.degenerate = report.rc[i] != 0.0;
        } else {
            row.correlation = report.mrc[i] / report.standalone[i];
        }
    }
    return rows;
}

std::vector<RollingReport> rolling_attribution(const AssetMatrix& asset_returns,
                                               std::span<const double> weights,
                                               RiskMeasureKind measure,
                                               std::size_t window,
                                               ConfidenceLevel alpha,
                                               std::size_t ced_path_len,
                                               std::size_t eval_step) {
    const std::size_t n = asset_returns.rows();
    const std::size_t m = asset_returns.cols();
    if (window < 2) throw precondition_error("attribution window must be >= 2");
    if (eval_step == 0) throw precondition_error("eval_step must be >= 1");
    if (window > n)
        throw precondition_error("attribution window exceeds available history");
    if (measure == RiskMeasureKind::ced) {
        if (ced_path_len == 0) ced_path_len = std::max<std::size_t>(window / 2, 2);
        if (ced_path_len > window)
            throw precondition_error("drawdown path length exceeds the window");
    }

    std::vector<RollingReport> out;
    for (std::size_t start = 0; start + window <= n; start += eval_step) {
        AssetMatrix slice;
        slice.asset_names = asset_returns.asset_names;
        slice.columns.resize(m);
        for (std::size_t a = 0; a < m; ++a)
            slice.columns[a].assign(asset_returns.columns[a].begin() + start,
                                    asset_returns.columns[a].begin() + start + window);
        RollingReport point;
        point.start = start;
        point.end = start + window;
        switch (measure) {
            case RiskMeasureKind::volatility:
                point.report = vol_contributions(slice, weights);
                break;
            case RiskMeasureKind::expected_shortfall:
                point.report = es_mrc(slice, weights, alpha);
                break;
            case RiskMeasureKind::ced: {
                std::vector<CumulativeReturnPath> paths(m);
                for (std::size_t a = 0; a < m; ++a)
                    paths[a] = periods_to_cumulative_path(
                        PeriodReturnSeries{slice.columns[a]}, PathMode::additive);
                point.report = ced_mrc(paths, weights, ced_path_len, alpha);
                break;
            }
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace ced

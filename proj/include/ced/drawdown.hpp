#pragma once

#include <cstddef>
#include <vector>

#include "ced/timeseries.hpp"

namespace ced {

/// Drawdown path: values[j] = max_{i<=j} X[i] - X[j], all entries >= 0,
/// values[0] = 0.
struct DrawdownPath {
    std::vector<double> values;
};

/// Largest peak-to-trough drop within one path. When value > 0,
/// value == X[peak_index] - X[trough_index] with peak_index < trough_index.
/// Flat or rising paths report value 0 with the (0, 0) sentinel indices.
struct MaxDrawdown {
    double value = 0.0;
    std::size_t peak_index = 0;
    std::size_t trough_index = 0;
};

/// Empirical maximum-drawdown distribution over rolling windows or scenarios.
struct MaxDrawdownSample {
    enum class Source { rolling, scenario };

    std::vector<double> values;  // magnitudes, in window/scenario order
    std::size_t window_len = 0;
    Source source = Source::rolling;
};

/// One-pass running-maximum drawdown path.
DrawdownPath drawdown_path(const CumulativeReturnPath& x);

/// Maximum drawdown with realizing indices. Ties resolve to the earliest
/// trough, then the earliest peak for that trough, so attribution indices are
/// deterministic. Requires length >= 2.
MaxDrawdown max_drawdown(const CumulativeReturnPath& x);

/// Maximum drawdown straight from period returns via the recursion
/// d_j = max(d_{j-1} - r_j, 0); equals max_drawdown of the additive
/// cumulative path of r.
double max_drawdown_recursive(const PeriodReturnSeries& r);

/// One maximum-drawdown magnitude per rolling window (re-anchoring is a
/// no-op for the magnitude: drawdown is shift invariant).
MaxDrawdownSample mdd_distribution(const CumulativeReturnPath& source,
                                   std::size_t window_len, std::size_t step = 1);

/// Per-window drawdowns with peak/trough indices (window-relative). Slower
/// than mdd_distribution; used where the indices matter.
std::vector<MaxDrawdown> mdd_windows_detailed(const CumulativeReturnPath& source,
                                              std::size_t window_len,
                                              std::size_t step = 1);

}  // namespace ced

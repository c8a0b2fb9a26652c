#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ced/common.hpp"

namespace ced {

/// Net-asset-value series with opaque ordered date labels. Dates are carried
/// for reporting only; periods are assumed equally spaced.
struct PriceSeries {
    std::vector<std::string> dates;  // may be empty (synthetic data)
    std::vector<double> prices;
};

/// Cumulative simple returns anchored at the path start: values[j] is the
/// return between the first point and point j, so values[0] == 0 when the
/// path was built from prices or period returns.
struct CumulativeReturnPath {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Per-period arithmetic returns r_t.
struct PeriodReturnSeries {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

enum class PathMode { additive, compound };

/// values[j] = P_j / P_0 - 1. Rejects non-positive prices (with index) and
/// series shorter than 2.
CumulativeReturnPath prices_to_cumulative_path(const PriceSeries& prices);

/// Additive: values[j] = sum of the first j returns. Compound: values[j] =
/// prod(1 + r_k) - 1; rejects any r <= -1 in compound mode. Empty input
/// yields the single-point path (0).
CumulativeReturnPath periods_to_cumulative_path(const PeriodReturnSeries& returns,
                                                PathMode mode);

/// Per-period simple returns P_t / P_{t-1} - 1.
PeriodReturnSeries prices_to_period_returns(const PriceSeries& prices);

/// Overlapping windows of `window_len` points, each re-anchored so its first
/// entry is exactly 0. A source of length T with step 1 yields T - n + 1
/// windows.
std::vector<CumulativeReturnPath> rolling_windows(const CumulativeReturnPath& source,
                                                  std::size_t window_len,
                                                  std::size_t step = 1);

std::size_t rolling_window_count(std::size_t source_len, std::size_t window_len,
                                 std::size_t step = 1);

/// CSV panel load result. Rows with any empty cell are dropped and counted;
/// malformed dates or numbers are hard errors carrying the 1-based row number.
struct LoadedCsv {
    std::vector<std::string> dates;
    AssetMatrix data;
    std::size_t dropped_rows = 0;
};

/// Expects a header row `date,<asset>,...`, ISO-8601 dates in strictly
/// increasing order, plain decimal numbers. Requires at least 2 usable rows.
LoadedCsv load_csv(const std::string& path);

PriceSeries column_as_price_series(const LoadedCsv& csv, std::size_t column);

}  // namespace ced

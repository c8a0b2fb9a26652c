#include "ced/drawdown.hpp"

#include <cmath>

#include "ced/kernels.hpp"

namespace ced {

DrawdownPath drawdown_path(const CumulativeReturnPath& x) {
    if (x.size() == 0) throw precondition_error("drawdown_path: empty path");
    DrawdownPath d;
    d.values.resize(x.size());
    double run_max = x.values[0];
    d.values[0] = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j) {
        const double v = x.values[j];
        if (v > run_max) run_max = v;
        d.values[j] = run_max - v;
    }
    return d;
}

namespace {

// Shared by max_drawdown and the detailed window scan. Indices are relative
// to `begin`. Strict comparisons keep the earliest trough and, for that
// trough, the earliest peak.
MaxDrawdown max_drawdown_span(const double* begin, std::size_t n) {
    double run_max = begin[0];
    std::size_t run_max_idx = 0;
    MaxDrawdown best;
    for (std::size_t j = 1; j < n; ++j) {
        const double v = begin[j];
        if (v > run_max) {
            run_max = v;
            run_max_idx = j;
        }
        const double dd = run_max - v;
        if (dd > best.value) {
            best.value = dd;
            best.peak_index = run_max_idx;
            best.trough_index = j;
        }
    }
    if (!(best.value > 0.0)) return MaxDrawdown{};  // sentinel (0, 0)
    return best;
}

}  // namespace

MaxDrawdown max_drawdown(const CumulativeReturnPath& x) {
    if (x.size() < 2)
        throw precondition_error("max_drawdown needs a path of length >= 2");
    return max_drawdown_span(x.values.data(), x.size());
}

double max_drawdown_recursive(const PeriodReturnSeries& r) {
    double d = 0.0;
    double mdd = 0.0;
    for (const double ret : r.values) {
        d = std::max(d - ret, 0.0);
        if (d > mdd) mdd = d;
    }
    return mdd;
}

MaxDrawdownSample mdd_distribution(const CumulativeReturnPath& source,
                                   std::size_t window_len, std::size_t step) {
    const std::size_t count = rolling_window_count(source.size(), window_len, step);
    MaxDrawdownSample sample;
    sample.window_len = window_len;
    sample.source = MaxDrawdownSample::Source::rolling;
    sample.values.resize(count);
    kernels::rolling_max_drawdown(source.values, window_len, step, sample.values);
    return sample;
}

std::vector<MaxDrawdown> mdd_windows_detailed(const CumulativeReturnPath& source,
                                              std::size_t window_len,
                                              std::size_t step) {
    const std::size_t count = rolling_window_count(source.size(), window_len, step);
    std::vector<MaxDrawdown> out(count);
    for (std::size_t w = 0; w < count; ++w)
        out[w] = max_drawdown_span(source.values.data() + w * step, window_len);
    return out;
}

}  // namespace ced

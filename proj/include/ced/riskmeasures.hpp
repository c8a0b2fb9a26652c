#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "ced/drawdown.hpp"
#include "ced/timeseries.hpp"

namespace ced {

/// Non-empty sample of reals (losses, maximum drawdowns, ...). The sorted
/// view is built once on first use and shared by subsequent queries.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& sorted() const;
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    mutable std::vector<double> sorted_;
    mutable std::once_flag sort_once_;
};

/// Lower alpha-quantile: the ceil(alpha*m)-th smallest of m values, the
/// empirical infimum of {x : P(X <= x) >= alpha}.
double lower_quantile(const EmpiricalSample& s, ConfidenceLevel alpha);

/// Mean of the K = floor(m*(1-alpha)) largest values. Rejects K = 0 rather
/// than silently falling back to the sample maximum.
double tail_mean(const EmpiricalSample& s, ConfidenceLevel alpha);

/// Drawdown threshold DT_alpha: the alpha-quantile of the maximum-drawdown
/// distribution.
double drawdown_threshold(const MaxDrawdownSample& s, ConfidenceLevel alpha);

/// Conditional expected drawdown: tail mean of the rolling maximum-drawdown
/// distribution of `source` at paths of `window_len` points.
double ced_measure(const CumulativeReturnPath& source, std::size_t window_len,
                   ConfidenceLevel alpha, std::size_t step = 1);

double ced_of_sample(const MaxDrawdownSample& s, ConfidenceLevel alpha);

/// Expected shortfall: tail mean of the loss distribution, losses = -returns.
double expected_shortfall(const PeriodReturnSeries& returns, ConfidenceLevel alpha);

/// Sample standard deviation (m-1 denominator) scaled by
/// sqrt(periods_per_year). Requires >= 2 observations.
double volatility(const PeriodReturnSeries& returns, double periods_per_year = 1.0);

}  // namespace ced

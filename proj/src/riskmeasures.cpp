#include "ced/riskmeasures.hpp"

#include <algorithm>
#include <cmath>

namespace ced {

EmpiricalSample::EmpiricalSample(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty()) throw precondition_error("empty sample");
    for (double v : values_)
        if (!std::isfinite(v)) throw precondition_error("non-finite sample value");
}

const std::vector<double>& EmpiricalSample::sorted() const {
    std::call_once(sort_once_, [this] {
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
    });
    return sorted_;
}

double lower_quantile(const EmpiricalSample& s, ConfidenceLevel alpha) {
    const auto& v = s.sorted();
    return v[quantile_rank(v.size(), alpha) - 1];
}

double tail_mean(const EmpiricalSample& s, ConfidenceLevel alpha) {
    const std::size_t m = s.size();
    const std::size_t k = tail_size(m, alpha);
    if (k == 0)
        throw precondition_error(
            "tail is empty: floor(" + std::to_string(m) + " * (1 - alpha)) = 0; "
            "use a larger sample or a smaller alpha");
    const auto& v = s.sorted();
    double sum = 0.0;
    for (std::size_t i = m - k; i < m; ++i) sum += v[i];
    return sum / static_cast<double>(k);
}

double drawdown_threshold(const MaxDrawdownSample& s, ConfidenceLevel alpha) {
    return lower_quantile(EmpiricalSample(s.values), alpha);
}

double ced_of_sample(const MaxDrawdownSample& s, ConfidenceLevel alpha) {
    return tail_mean(EmpiricalSample(s.values), alpha);
}

double ced_measure(const CumulativeReturnPath& source, std::size_t window_len,
                   ConfidenceLevel alpha, std::size_t step) {
    return ced_of_sample(mdd_distribution(source, window_len, step), alpha);
}

double expected_shortfall(const PeriodReturnSeries& returns, ConfidenceLevel alpha) {
    std::vector<double> losses(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) losses[i] = -returns.values[i];
    return tail_mean(EmpiricalSample(std::move(losses)), alpha);
}

double volatility(const PeriodReturnSeries& returns, double periods_per_year) {
    const std::size_t n = returns.size();
    if (n < 2) throw precondition_error("volatility needs at least 2 observations");
    double mean = 0.0;
    for (double r : returns.values) mean += r;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double r : returns.values) {
        const double d = r - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    return std::sqrt(var) * std::sqrt(periods_per_year);
}

}  // namespace ced

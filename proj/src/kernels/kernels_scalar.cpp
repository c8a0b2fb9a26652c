#include "ced/kernels.hpp"

#include <cassert>

namespace ced::kernels::scalar {

void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out) {
    assert(window >= 1 && step >= 1);
    assert(x.size() >= window);
    assert(out.size() == (x.size() - window) / step + 1);
    for (std::size_t w = 0; w < out.size(); ++w) {
        const double* p = x.data() + w * step;
        double run_max = p[0];
        double mdd = 0.0;
        for (std::size_t j = 1; j < window; ++j) {
            const double v = p[j];
            if (v > run_max) run_max = v;
            const double dd = run_max - v;
            if (dd > mdd) mdd = dd;
        }
        out[w] = mdd;
    }
}

void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out) {
    assert(asset_columns.size() == weights.size());
    const std::size_t m = weights.size();
    const std::size_t n = out.size();
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t a = 0; a < m; ++a) acc += weights[a] * asset_columns[a][t];
        out[t] = acc;
    }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ced::kernels::scalar

#include "ced/kernels.hpp"

#ifdef CED_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cassert>

// One vector lane per independent output element, with the same operation
// sequence as the scalar kernel, so results match the scalar variant bit for
// bit. No FMA: the scalar kernels round the product and the sum separately.

namespace ced::kernels::avx2 {

void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out) {
    assert(window >= 1 && step >= 1);
    assert(x.size() >= window);
    const std::size_t n_windows = out.size();
    std::size_t w = 0;
    if (step == 1 && window >= 2) {
        // Lanes are windows w..w+3; at inner offset j they read the
        // contiguous doubles x[w+j .. w+j+3].
        for (; w + 4 <= n_windows; w += 4) {
            const double* p = x.data() + w;
            __m256d run_max = _mm256_loadu_pd(p);
            __m256d mdd = _mm256_setzero_pd();
            for (std::size_t j = 1; j < window; ++j) {
                const __m256d v = _mm256_loadu_pd(p + j);
                run_max = _mm256_max_pd(run_max, v);
                const __m256d dd = _mm256_sub_pd(run_max, v);
                mdd = _mm256_max_pd(mdd, dd);
            }
            // adding +0.0 turns a propagated -0.0 into the +0.0 the scalar
            // strict-compare produces; a no-op for every other value
            mdd = _mm256_add_pd(mdd, _mm256_setzero_pd());
            _mm256_storeu_pd(out.data() + w, mdd);
        }
    }
    if (w < n_windows)
        scalar::rolling_max_drawdown(x.subspan(w * step), window, step,
                                     out.subspan(w));
}

void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out) {
    assert(asset_columns.size() == weights.size());
    const std::size_t m = weights.size();
    const std::size_t n = out.size();
    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t a = 0; a < m; ++a) {
            const __m256d v = _mm256_loadu_pd(asset_columns[a] + t);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[a]), v));
        }
        _mm256_storeu_pd(out.data() + t, acc);
    }
    for (; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t a = 0; a < m; ++a) acc += weights[a] * asset_columns[a][t];
        out[t] = acc;
    }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ced::kernels::avx2

#endif  // CED_HAVE_AVX2_KERNELS

#include "ced/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ced::kernels {

bool avx2_available() {
#ifdef CED_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Backend detect_backend() {
    if (const char* forced = std::getenv("CED_KERNELS")) {
        if (std::strcmp(forced, "scalar") == 0) return Backend::scalar;
#ifdef CED_HAVE_AVX2_KERNELS
        if (std::strcmp(forced, "avx2") == 0 && avx2_available())
            return Backend::avx2;
#endif
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend backend = detect_backend();
    return backend;
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out) {
#ifdef CED_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::avx2)
        return avx2::rolling_max_drawdown(x, window, step, out);
#endif
    scalar::rolling_max_drawdown(x, window, step, out);
}

void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out) {
#ifdef CED_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::avx2)
        return avx2::weighted_sum(asset_columns, weights, out);
#endif
    scalar::weighted_sum(asset_columns, weights, out);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
#ifdef CED_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::avx2) return avx2::axpy(a, x, y);
#endif
    scalar::axpy(a, x, y);
}

}  // namespace ced::kernels

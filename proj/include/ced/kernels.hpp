#pragma once

#include <cstddef>
#include <span>
#include <string>

// Data-parallel inner loops used by the analytics layers. Every kernel has a
// scalar reference implementation and may have SIMD variants; the active
// variant is chosen once at startup from CPU capabilities and can be forced
// with the CED_KERNELS environment variable ("scalar" or "avx2").
//
// Contract: for identical inputs all variants return bit-identical outputs.
// The SIMD variants keep the scalar per-element operation order (one vector
// lane per independent output), and the kernel translation units are built
// with FP contraction off so the compiler cannot fuse a*b+c differently per
// variant.

namespace ced::kernels {

enum class Backend { scalar, avx2 };

/// Backend selected at startup (CPU detection + CED_KERNELS override).
Backend active_backend();

std::string backend_name(Backend b);

/// True if the avx2 variants are compiled in and the CPU supports them.
bool avx2_available();

/// Maximum drawdown magnitude of each rolling window over a cumulative-return
/// path. Window w covers x[w*step .. w*step+window-1]; out[w] is the largest
/// running-peak-minus-current value inside that window (>= 0). out.size()
/// windows are produced; caller sizes out as (x.size()-window)/step + 1.
void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out);

/// out[t] = sum_a weights[a] * asset_columns[a][t], accumulated in asset
/// order. Used for portfolio paths and portfolio period returns.
void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out);

/// y += a * x (elementwise; sizes must match).
void axpy(double a, std::span<const double> x, std::span<double> y);

namespace scalar {
void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out);
void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CED_HAVE_AVX2_KERNELS 1
namespace avx2 {
void rolling_max_drawdown(std::span<const double> x, std::size_t window,
                          std::size_t step, std::span<double> out);
void weighted_sum(std::span<const double* const> asset_columns,
                  std::span<const double> weights, std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace ced::kernels

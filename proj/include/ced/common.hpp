#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ced {

inline constexpr const char* library_version = "0.1.0";

/// Input that violates an operation precondition (bad alpha, short sample, ...).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Missing or unreadable file.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad number, bad date, ragged rows).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Confidence level alpha in the open interval (0, 1).
struct ConfidenceLevel {
    double alpha;

    explicit ConfidenceLevel(double a) : alpha(a) {
        if (!(a > 0.0 && a < 1.0))
            throw precondition_error("confidence level must lie in (0, 1), got " +
                                     std::to_string(a));
    }
};

// Tail size K = floor(m * (1 - alpha)). The nudge absorbs the binary
// representation error of decimal alphas (e.g. 10 * (1 - 0.8) evaluates to
// 1.9999999999999996 in doubles but means 2).
inline std::size_t tail_size(std::size_t m, ConfidenceLevel level) {
    const double raw = static_cast<double>(m) * (1.0 - level.alpha);
    const double nudged = raw + 1e-9 * static_cast<double>(m) + 1e-9;
    const double k = std::floor(nudged);
    return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

// One-based order-statistic rank ceil(alpha * m), clamped to [1, m].
// Nudged downward for the same decimal-representation reason as tail_size.
inline std::size_t quantile_rank(std::size_t m, ConfidenceLevel level) {
    const double raw = level.alpha * static_cast<double>(m);
    const double nudged = raw - 1e-9 * static_cast<double>(m) - 1e-9;
    double r = std::ceil(nudged);
    if (r < 1.0) r = 1.0;
    if (r > static_cast<double>(m)) r = static_cast<double>(m);
    return static_cast<std::size_t>(r);
}

/// Indices of the k largest values, largest first; value ties broken by
/// original position (earlier index wins). Deterministic for any input order.
inline std::vector<std::size_t> k_largest_indices(const std::vector<double>& values,
                                                  std::size_t k) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return values[a] > values[b];
    });
    if (k < idx.size()) idx.resize(k);
    return idx;
}

// SplitMix64; used to derive independent per-cell RNG streams from one user
// seed so that parallel evaluation order can never change results.
inline std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t cell) {
    return split_mix64(split_mix64(seed) ^ split_mix64(cell + 0x6a09e667f3bcc909ULL));
}

/// Periods-by-assets return (or price) panel, one contiguous column per asset.
struct AssetMatrix {
    std::vector<std::string> asset_names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t row, std::size_t col) const { return columns[col][row]; }
};

}  // namespace ced

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ced/attribution.hpp"
#include "test_support.hpp"

using namespace ced;

namespace {

// Two exactly-orthogonal mean-zero columns with sd ratio a:b (period-4 tile).
AssetMatrix orthogonal_pair(double a, double b, std::size_t tiles) {
    AssetMatrix m;
    m.asset_names = {"A", "B"};
    m.columns.resize(2);
    for (std::size_t i = 0; i < tiles; ++i) {
        m.columns[0].insert(m.columns[0].end(), {a, -a, a, -a});
        m.columns[1].insert(m.columns[1].end(), {b, b, -b, -b});
    }
    return m;
}

AssetMatrix random_panel(std::mt19937_64& gen, std::size_t n, std::size_t m,
                         double sd = 0.02) {
    std::normal_distribution<double> d(0.0, sd);
    AssetMatrix out;
    out.columns.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        out.asset_names.push_back("a" + std::to_string(a));
        out.columns[a].resize(n);
        for (auto& v : out.columns[a]) v = d(gen);
    }
    return out;
}

std::vector<double> random_weights(std::mt19937_64& gen, std::size_t m) {
    std::uniform_real_distribution<double> d(0.05, 1.0);
    std::vector<double> w(m);
    double s = 0.0;
    for (auto& x : w) {
        x = d(gen);
        s += x;
    }
    for (auto& x : w) x /= s;
    return w;
}

std::vector<CumulativeReturnPath> additive_paths(const AssetMatrix& returns) {
    std::vector<CumulativeReturnPath> paths(returns.cols());
    for (std::size_t a = 0; a < returns.cols(); ++a)
        paths[a] = periods_to_cumulative_path(PeriodReturnSeries{returns.columns[a]},
                                              PathMode::additive);
    return paths;
}

}  // namespace

TEST_CASE("volatility contributions: symmetry and closed forms") {
    auto even = vol_contributions(orthogonal_pair(0.01, 0.01, 25),
                                  std::vector<double>{0.5, 0.5});
    CHECK(even.frc[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(even.frc[1] == doctest::Approx(0.5).epsilon(1e-12));

    AssetMatrix one;
    one.asset_names = {"A"};
    one.columns = {{0.01, -0.02, 0.015, 0.0, -0.005, 0.01}};
    auto single = vol_contributions(one, std::vector<double>{1.0});
    CHECK(single.frc[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(single.mrc[0] ==
          doctest::Approx(volatility(PeriodReturnSeries{one.columns[0]})).epsilon(1e-12));

    // sd ratio 3:1 at weights (0.6, 0.4): frc1 = 0.36*9 / (0.36*9 + 0.16).
    auto skew = vol_contributions(orthogonal_pair(0.18, 0.06, 25),
                                  std::vector<double>{0.6, 0.4});
    CHECK(skew.frc[0] == doctest::Approx(3.24 / 3.4).epsilon(1e-12));

    AssetMatrix flat;
    flat.asset_names = {"A"};
    flat.columns = {{0.0, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(vol_contributions(flat, std::vector<double>{1.0}),
                    precondition_error);
}

TEST_CASE("shortfall contributions: hand-enumerated tail") {
    AssetMatrix panel;
    panel.asset_names = {"A", "B"};
    panel.columns = {
        {0.02, -0.05, 0.01, -0.01, 0.03, -0.04, 0.00, 0.02, -0.03, 0.01},
        {0.00, -0.01, 0.02, -0.03, 0.01, -0.02, 0.01, 0.00, -0.05, 0.02}};
    const std::vector<double> w{0.7, 0.3};

    // Portfolio losses by hand; alpha = 0.8 selects the 2 worst periods.
    std::vector<double> losses(10);
    for (std::size_t t = 0; t < 10; ++t)
        losses[t] = -(w[0] * panel.columns[0][t] + w[1] * panel.columns[1][t]);
    auto order = k_largest_indices(losses, 2);

    auto report = es_mrc(panel, w, ConfidenceLevel(0.8));
    REQUIRE(report.tail_indices == order);
    for (std::size_t a = 0; a < 2; ++a) {
        const double direct =
            (-panel.columns[a][order[0]] - panel.columns[a][order[1]]) / 2.0;
        CHECK(report.mrc[a] == doctest::Approx(direct).epsilon(1e-14));
    }
    const double port_es = (losses[order[0]] + losses[order[1]]) / 2.0;
    CHECK(report.total == doctest::Approx(port_es).epsilon(1e-14));
}

TEST_CASE("shortfall contributions: degenerate assets") {
    AssetMatrix one;
    one.asset_names = {"A"};
    one.columns = {{0.01, -0.02, 0.015, -0.03, 0.01, -0.01, 0.02, -0.02, 0.0, 0.01}};
    auto single = es_mrc(one, std::vector<double>{1.0}, ConfidenceLevel(0.8));
    CHECK(single.mrc[0] ==
          doctest::Approx(expected_shortfall(PeriodReturnSeries{one.columns[0]},
                                             ConfidenceLevel(0.8)))
              .epsilon(1e-14));

    AssetMatrix with_zero;
    with_zero.asset_names = {"A", "Z"};
    with_zero.columns = {one.columns[0], std::vector<double>(10, 0.0)};
    auto rep = es_mrc(with_zero, std::vector<double>{1.0, 0.5}, ConfidenceLevel(0.8));
    CHECK(rep.mrc[1] == 0.0);
}

namespace {

// Test-side oracle for drawdown contributions: plain loops, pair-enumerated
// peak/trough per window, explicit tail selection.
struct CedOracle {
    double total = 0.0;
    std::vector<double> mrc;
};

CedOracle ced_mrc_oracle(const std::vector<CumulativeReturnPath>& paths,
                         const std::vector<double>& w, std::size_t window,
                         double alpha_v) {
    const std::size_t len = paths.front().size();
    const std::size_t n_windows = len - window + 1;
    std::vector<double> mdd(n_windows);
    std::vector<std::size_t> peak(n_windows, 0), trough(n_windows, 0);
    for (std::size_t s = 0; s < n_windows; ++s) {
        double best = 0.0;
        peak[s] = trough[s] = s;
        for (std::size_t j = 1; j < window; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                double pi = 0.0, pj = 0.0;
                for (std::size_t a = 0; a < w.size(); ++a) {
                    pi += w[a] * paths[a].values[s + i];
                    pj += w[a] * paths[a].values[s + j];
                }
                if (pi - pj > best) {
                    best = pi - pj;
                    peak[s] = s + i;
                    trough[s] = s + j;
                }
            }
        mdd[s] = best;
    }
    const std::size_t k = tail_size(n_windows, ConfidenceLevel(alpha_v));
    auto tail = k_largest_indices(mdd, k);
    CedOracle out;
    out.mrc.assign(w.size(), 0.0);
    for (std::size_t s : tail) {
        out.total += mdd[s];
        for (std::size_t a = 0; a < w.size(); ++a)
            out.mrc[a] += paths[a].values[peak[s]] - paths[a].values[trough[s]];
    }
    out.total /= static_cast<double>(k);
    for (auto& v : out.mrc) v /= static_cast<double>(k);
    return out;
}

}  // namespace

TEST_CASE("drawdown contributions: degenerate and symmetric cases") {
    auto gen = testsupport::rng(31);
    auto path = testsupport::random_walk(gen, 60);

    auto single = ced_mrc({path}, std::vector<double>{1.0}, 20, ConfidenceLevel(0.8));
    CHECK(single.mrc[0] ==
          doctest::Approx(ced_measure(path, 20, ConfidenceLevel(0.8))).epsilon(1e-13));
    CHECK(single.frc[0] == doctest::Approx(1.0).epsilon(1e-12));

    auto twins = ced_mrc({path, path}, std::vector<double>{0.5, 0.5}, 20,
                         ConfidenceLevel(0.8));
    CHECK(twins.rc[0] == doctest::Approx(twins.rc[1]).epsilon(1e-12));
    CHECK(twins.frc[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("drawdown contributions match the brute-force oracle") {
    auto gen = testsupport::rng(32);
    // Toy sized for hand enumeration: 5 windows of length 4, alpha 0.6 -> 2
    // tail windows.
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<CumulativeReturnPath> paths{testsupport::random_walk(gen, 8),
                                                testsupport::random_walk(gen, 8)};
        const std::vector<double> w{0.6, 0.4};
        const auto oracle = ced_mrc_oracle(paths, w, 4, 0.6);
        if (oracle.total == 0.0) continue;
        auto report = ced_mrc(paths, w, 4, ConfidenceLevel(0.6));
        CHECK(report.total == doctest::Approx(oracle.total).epsilon(1e-12));
        for (std::size_t a = 0; a < 2; ++a)
            CHECK(report.mrc[a] == doctest::Approx(oracle.mrc[a]).epsilon(1e-11));
    }
}

TEST_CASE("euler identity holds in sample for all three measures") {
    auto gen = testsupport::rng(33);
    for (int rep = 0; rep < 40; ++rep) {
        std::uniform_int_distribution<std::size_t> md(1, 5), nd(40, 120);
        const std::size_t m = md(gen);
        const std::size_t n = nd(gen);
        const auto panel = random_panel(gen, n, m);
        const auto w = random_weights(gen, m);

        auto vol_rep = vol_contributions(panel, w);
        double sum_rc = 0.0, sum_frc = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            sum_rc += vol_rep.rc[a];
            sum_frc += vol_rep.frc[a];
            REQUIRE(std::abs(vol_rep.gen_corr[a]) <= 1.0 + 1e-9);
        }
        REQUIRE(sum_rc == doctest::Approx(vol_rep.total).epsilon(1e-9));
        REQUIRE(sum_frc == doctest::Approx(1.0).epsilon(1e-9));

        auto es_rep = es_mrc(panel, w, ConfidenceLevel(0.9));
        sum_rc = 0.0;
        for (std::size_t a = 0; a < m; ++a) sum_rc += es_rep.rc[a];
        REQUIRE(std::abs(sum_rc - es_rep.total) <= 1e-12 * std::abs(es_rep.total));

        auto ced_rep = ced_mrc(additive_paths(panel), w, 20, ConfidenceLevel(0.9));
        sum_rc = 0.0;
        for (std::size_t a = 0; a < m; ++a) sum_rc += ced_rep.rc[a];
        REQUIRE(std::abs(sum_rc - ced_rep.total) <= 1e-12 * std::abs(ced_rep.total));
    }
}

TEST_CASE("weight scaling: rc scales, frc unchanged") {
    auto gen = testsupport::rng(34);
    const auto panel = random_panel(gen, 80, 3);
    const auto w = random_weights(gen, 3);
    std::vector<double> w2(w);
    for (auto& x : w2) x *= 2.5;

    auto base = es_mrc(panel, w, ConfidenceLevel(0.85));
    auto scaled = es_mrc(panel, w2, ConfidenceLevel(0.85));
    for (std::size_t a = 0; a < 3; ++a) {
        CHECK(scaled.rc[a] == doctest::Approx(2.5 * base.rc[a]).epsilon(1e-12));
        CHECK(scaled.frc[a] == doctest::Approx(base.frc[a]).epsilon(1e-12));
    }

    auto cbase = ced_mrc(additive_paths(panel), w, 20, ConfidenceLevel(0.85));
    auto cscaled = ced_mrc(additive_paths(panel), w2, 20, ConfidenceLevel(0.85));
    for (std::size_t a = 0; a < 3; ++a) {
        CHECK(cscaled.rc[a] == doctest::Approx(2.5 * cbase.rc[a]).epsilon(1e-12));
        CHECK(cscaled.frc[a] == doctest::Approx(cbase.frc[a]).epsilon(1e-12));
    }
}

namespace {

double ced_estimate_at(const std::vector<CumulativeReturnPath>& paths,
                       const std::vector<double>& w, std::size_t window,
                       double alpha_v, std::vector<std::size_t>* tail_out,
                       std::vector<std::pair<std::size_t, std::size_t>>* idx_out) {
    const std::size_t len = paths.front().size();
    CumulativeReturnPath port;
    port.values.assign(len, 0.0);
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t j = 0; j < len; ++j)
            port.values[j] += w[a] * paths[a].values[j];
    const auto detailed = mdd_windows_detailed(port, window, 1);
    std::vector<double> mags(detailed.size());
    for (std::size_t i = 0; i < detailed.size(); ++i) mags[i] = detailed[i].value;
    const std::size_t k = tail_size(mags.size(), ConfidenceLevel(alpha_v));
    auto tail = k_largest_indices(mags, k);
    if (tail_out) *tail_out = tail;
    if (idx_out) {
        idx_out->clear();
        for (std::size_t s : tail)
            idx_out->push_back({detailed[s].peak_index, detailed[s].trough_index});
    }
    double total = 0.0;
    for (std::size_t s : tail) total += mags[s];
    return total / static_cast<double>(k);
}

}  // namespace

TEST_CASE("conditional-average mrc matches finite differences on stable instances") {
    auto gen = testsupport::rng(35);
    const double h = 1e-4;
    int tested = 0;
    for (int rep = 0; rep < 60 && tested < 10; ++rep) {
        std::vector<CumulativeReturnPath> paths{testsupport::random_walk(gen, 80, 0.02),
                                                testsupport::random_walk(gen, 80, 0.02)};
        const std::vector<double> w{0.6, 0.4};
        auto report = ced_mrc(paths, w, 20, ConfidenceLevel(0.8));

        std::vector<std::size_t> tail0;
        std::vector<std::pair<std::size_t, std::size_t>> idx0;
        ced_estimate_at(paths, w, 20, 0.8, &tail0, &idx0);

        bool stable = true;
        for (std::size_t a = 0; a < 2 && stable; ++a) {
            for (double sign : {+1.0, -1.0}) {
                std::vector<double> wp = w;
                wp[a] += sign * h;
                std::vector<std::size_t> tail;
                std::vector<std::pair<std::size_t, std::size_t>> idx;
                ced_estimate_at(paths, wp, 20, 0.8, &tail, &idx);
                if (tail != tail0 || idx != idx0) {
                    stable = false;
                    break;
                }
            }
        }
        if (!stable) continue;
        ++tested;
        for (std::size_t a = 0; a < 2; ++a) {
            std::vector<double> wp = w, wm = w;
            wp[a] += h;
            wm[a] -= h;
            const double fd = (ced_estimate_at(paths, wp, 20, 0.8, nullptr, nullptr) -
                               ced_estimate_at(paths, wm, 20, 0.8, nullptr, nullptr)) /
                              (2.0 * h);
            REQUIRE(std::abs(fd - report.mrc[a]) <=
                    5e-3 * std::max(1e-6, std::abs(report.mrc[a])));
        }
    }
    CHECK(tested >= 5);
}

TEST_CASE("x_sigma_rho reproduces rc and exposes linear correlation") {
    auto gen = testsupport::rng(36);
    const auto panel = random_panel(gen, 100, 3);
    std::vector<double> w{0.5, 0.3, 0.0};  // zero-weight asset included

    auto report = vol_contributions(panel, w);
    auto rows = x_sigma_rho(report);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!std::isnan(rows[i].correlation)) {
            const double product =
                rows[i].weight * rows[i].standalone * rows[i].correlation;
            REQUIRE(product == doctest::Approx(report.rc[i]).epsilon(1e-9));
        }
        REQUIRE_FALSE(rows[i].degenerate);
    }
    CHECK(report.rc[2] == 0.0);

    // Volatility correlation reduces to linear correlation with the portfolio.
    std::vector<double> port(panel.rows(), 0.0);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t t = 0; t < panel.rows(); ++t)
            port[t] += w[a] * panel.columns[a][t];
    for (std::size_t a = 0; a < 2; ++a) {
        double ma = 0.0, mp = 0.0;
        for (std::size_t t = 0; t < panel.rows(); ++t) {
            ma += panel.columns[a][t];
            mp += port[t];
        }
        ma /= static_cast<double>(panel.rows());
        mp /= static_cast<double>(panel.rows());
        double saa = 0.0, spp = 0.0, sap = 0.0;
        for (std::size_t t = 0; t < panel.rows(); ++t) {
            saa += (panel.columns[a][t] - ma) * (panel.columns[a][t] - ma);
            spp += (port[t] - mp) * (port[t] - mp);
            sap += (panel.columns[a][t] - ma) * (port[t] - mp);
        }
        const double corr = sap / std::sqrt(saa * spp);
        CHECK(rows[a].correlation == doctest::Approx(corr).epsilon(1e-9));
    }
}

TEST_CASE("rolling attribution basics") {
    auto gen = testsupport::rng(37);

    AssetMatrix one;
    one.asset_names = {"A"};
    one.columns = {testsupport::gaussian_returns(gen, 300, 0.01).values};
    auto single = rolling_attribution(one, std::vector<double>{1.0},
                                      RiskMeasureKind::volatility, 60,
                                      ConfidenceLevel(0.9), 0, 10);
    CHECK(single.size() == (300 - 60) / 10 + 1);
    for (const auto& p : single) CHECK(p.report.frc[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(rolling_attribution(one, std::vector<double>{1.0},
                                        RiskMeasureKind::volatility, 500,
                                        ConfidenceLevel(0.9)),
                    precondition_error);

    // Two i.i.d. symmetric assets: rolling frc fluctuates around the static frc.
    const auto panel = random_panel(gen, 2000, 2, 0.01);
    const std::vector<double> w{0.5, 0.5};
    const auto rolling = rolling_attribution(panel, w, RiskMeasureKind::volatility,
                                             250, ConfidenceLevel(0.9), 0, 50);
    const double static_frc = vol_contributions(panel, w).frc[0];
    double mean_frc = 0.0;
    for (const auto& p : rolling) mean_frc += p.report.frc[0];
    mean_frc /= static_cast<double>(rolling.size());
    CHECK(std::abs(mean_frc - static_frc) < 0.05);

    // Drawdown measure: the Euler identity holds at every evaluation date.
    const auto ced_roll = rolling_attribution(panel, w, RiskMeasureKind::ced, 250,
                                              ConfidenceLevel(0.8), 60, 250);
    CHECK(!ced_roll.empty());
    for (const auto& p : ced_roll) {
        const double sum = p.report.rc[0] + p.report.rc[1];
        REQUIRE(std::abs(sum - p.report.total) <= 1e-12 * p.report.total);
    }
}

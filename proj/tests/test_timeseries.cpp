#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ced/timeseries.hpp"
#include "test_support.hpp"

using namespace ced;

TEST_CASE("prices_to_cumulative_path hand cases") {
    CumulativeReturnPath p = prices_to_cumulative_path({{}, {100, 100, 100}});
    CHECK(p.values == std::vector<double>{0.0, 0.0, 0.0});

    p = prices_to_cumulative_path({{}, {100, 110, 99}});
    CHECK(p.values[0] == 0.0);
    CHECK(p.values[1] == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(p.values[2] == doctest::Approx(-0.01).epsilon(1e-14));

    p = prices_to_cumulative_path({{}, {100, 50, 100}});
    CHECK(p.values == std::vector<double>{0.0, -0.5, 0.0});
}

TEST_CASE("prices_to_cumulative_path rejections") {
    CHECK_THROWS_AS(prices_to_cumulative_path({{}, {100}}), precondition_error);
    CHECK_THROWS_AS(prices_to_cumulative_path({{}, {100, 0.0, 3}}), precondition_error);
    CHECK_THROWS_AS(prices_to_cumulative_path({{}, {100, -5, 3}}), precondition_error);
    CHECK_THROWS_WITH(prices_to_cumulative_path({{}, {100, -5, 3}}),
                      doctest::Contains("index 1"));
}

TEST_CASE("price reconstruction round trip") {
    auto gen = testsupport::rng(11);
    std::uniform_real_distribution<double> d(50.0, 150.0);
    PriceSeries s;
    for (int i = 0; i < 200; ++i) s.prices.push_back(d(gen));
    const auto path = prices_to_cumulative_path(s);
    for (std::size_t j = 0; j < s.prices.size(); ++j) {
        const double rebuilt = s.prices[0] * (1.0 + path.values[j]);
        CHECK(std::abs(rebuilt - s.prices[j]) <= 1e-12 * s.prices[j]);
    }
}

TEST_CASE("periods_to_cumulative_path modes") {
    PeriodReturnSeries r{{0.01, -0.01}};
    auto add = periods_to_cumulative_path(r, PathMode::additive);
    CHECK(add.values[0] == 0.0);
    CHECK(add.values[1] == doctest::Approx(0.01));
    CHECK(add.values[2] == doctest::Approx(0.0).epsilon(1e-15));

    auto cmp = periods_to_cumulative_path({{0.10, 0.10}}, PathMode::compound);
    CHECK(cmp.values[1] == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(cmp.values[2] == doctest::Approx(0.21).epsilon(1e-14));

    auto empty = periods_to_cumulative_path({{}}, PathMode::additive);
    CHECK(empty.values == std::vector<double>{0.0});

    CHECK_THROWS_AS(periods_to_cumulative_path({{0.5, -1.0}}, PathMode::compound),
                    precondition_error);
}

TEST_CASE("additive and compound agree to first order for tiny returns") {
    auto gen = testsupport::rng(3);
    std::uniform_real_distribution<double> d(-1e-6, 1e-6);
    PeriodReturnSeries r;
    for (int i = 0; i < 500; ++i) r.values.push_back(d(gen));
    const auto a = periods_to_cumulative_path(r, PathMode::additive);
    const auto c = periods_to_cumulative_path(r, PathMode::compound);
    double max_diff = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        max_diff = std::max(max_diff, std::abs(a.values[j] - c.values[j]));
    CHECK(max_diff <= 1e-9);
}

TEST_CASE("rolling_windows counts and re-anchoring") {
    auto gen = testsupport::rng(4);
    auto src = testsupport::random_walk(gen, 10);
    auto wins = rolling_windows(src, 5, 1);
    CHECK(wins.size() == 6);
    for (const auto& w : wins) {
        CHECK(w.values.size() == 5);
        CHECK(w.values[0] == 0.0);
    }

    auto single = rolling_windows(src, 10, 1);
    CHECK(single.size() == 1);
    for (std::size_t j = 0; j < 10; ++j)
        CHECK(single[0].values[j] == doctest::Approx(src.values[j] - src.values[0]));

    CumulativeReturnPath four{{0.0, 0.1, 0.2, 0.3}};
    CHECK_THROWS_AS(rolling_windows(four, 5, 1), precondition_error);
}

namespace {

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

}  // namespace

TEST_CASE("load_csv basic, missing rows, failures") {
    const std::string path = "test_ts_panel.csv";
    write_file(path,
               "date,EQ,BD\n"
               "2020-01-01,100,200\n"
               "2020-01-02,101,199\n"
               "2020-01-03,102,198\n");
    auto csv = load_csv(path);
    CHECK(csv.data.cols() == 2);
    CHECK(csv.data.rows() == 3);
    CHECK(csv.dropped_rows == 0);
    CHECK(csv.data.asset_names == std::vector<std::string>{"EQ", "BD"});
    CHECK(csv.data.at(1, 0) == 101.0);

    write_file(path,
               "date,EQ,BD\n"
               "2020-01-01,100,200\n"
               "2020-01-02,,199\n"
               "2020-01-03,102,198\n");
    csv = load_csv(path);
    CHECK(csv.data.rows() == 2);
    CHECK(csv.dropped_rows == 1);

    write_file(path, "");
    CHECK_THROWS_AS(load_csv(path), parse_error);

    write_file(path,
               "date,EQ\n"
               "2020-01-01,100\n"
               "2020-01-02,abc\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("row 3"), parse_error);

    write_file(path,
               "date,EQ\n"
               "2020-01-02,100\n"
               "2020-01-01,101\n");
    CHECK_THROWS_AS(load_csv(path), parse_error);

    CHECK_THROWS_AS(load_csv("no_such_file_here.csv"), io_error);
    std::remove(path.c_str());
}

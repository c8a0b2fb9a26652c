#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ced/io.hpp"
#include "test_support.hpp"

using namespace ced;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.25) == "-0.25");
    auto gen = testsupport::rng(81);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double v = d(gen);
        const double back = std::stod(format_double(v));
        REQUIRE(std::memcmp(&v, &back, sizeof v) == 0);
    }
}

TEST_CASE("manifest is sorted, flat and timestamp-free") {
    Manifest m;
    m.set("seed", std::size_t{7});
    m.set("alpha", 0.9);
    m.set("command", "simulate sweep");
    m.write("test_manifest.txt");
    const std::string body = slurp("test_manifest.txt");
    CHECK(body == "alpha=0.9\ncommand=simulate sweep\nseed=7\n");
    std::remove("test_manifest.txt");
}

TEST_CASE("csv artifacts embed their manifest reference") {
    {
        CsvWriter csv("test_art.csv", "test_art.manifest");
        csv.header({"a", "b"});
        csv.row({"1", "2"});
    }
    const std::string body = slurp("test_art.csv");
    CHECK(body == "# manifest=test_art.manifest\na,b\n1,2\n");
    std::remove("test_art.csv");
}

TEST_CASE("scenario csv round trip preserves values bitwise") {
    auto gen = testsupport::rng(82);
    std::normal_distribution<double> d(0.0, 0.02);
    ScenarioSet s;
    s.resize(7, 4, 3);
    for (auto& r : s.returns) r = d(gen);

    write_scenario_csv("test_scen.csv", s, "test_scen.manifest");
    auto back = load_scenario_csv("test_scen.csv");
    REQUIRE(back.n_scenarios == 7);
    REQUIRE(back.n_periods == 4);
    REQUIRE(back.n_assets == 3);
    REQUIRE(std::memcmp(back.returns.data(), s.returns.data(),
                        s.returns.size() * sizeof(double)) == 0);
    std::remove("test_scen.csv");
}

TEST_CASE("scenario csv rejections") {
    {
        std::ofstream out("test_scen_bad.csv");
        out << "scenario_id,period,a1\n0,0,0.01\n0,1,0.02\n1,0,0.03\n";
    }
    // scenario 1 lacks period 1: not rectangular.
    CHECK_THROWS_AS(load_scenario_csv("test_scen_bad.csv"), parse_error);

    {
        std::ofstream out("test_scen_bad.csv");
        out << "scenario_id,period,a1\n0,0,0.01\n0,0,0.02\n";
    }
    CHECK_THROWS_AS(load_scenario_csv("test_scen_bad.csv"), parse_error);

    {
        std::ofstream out("test_scen_bad.csv");
        out << "id,period,a1\n0,0,0.01\n";
    }
    CHECK_THROWS_AS(load_scenario_csv("test_scen_bad.csv"), parse_error);

    CHECK_THROWS_AS(load_scenario_csv("no_such_scenarios.csv"), io_error);
    std::remove("test_scen_bad.csv");
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ced/drawdown.hpp"
#include "ced/io.hpp"
#include "ced/timeseries.hpp"

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CED_CLI_PATH) + " " + args + " 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_prices(const std::string& path) {
    std::ofstream out(path);
    out << "date,EQ,BD\n";
    double p1 = 100.0, p2 = 200.0;
    for (int i = 0; i < 40; ++i) {
        const int day = i % 28 + 1;
        const int month = i / 28 + 1;
        char date[32];
        std::snprintf(date, sizeof date, "2020-%02d-%02d", month, day);
        p1 *= 1.0 + ((i * 37) % 11 - 5) / 200.0;
        p2 *= 1.0 + ((i * 17) % 7 - 3) / 300.0;
        out << date << "," << p1 << "," << p2 << "\n";
    }
}

}  // namespace

TEST_CASE("mdd subcommand matches the library") {
    write_prices("cli_prices.csv");
    REQUIRE(run_cli("mdd --input cli_prices.csv --window 10 --output cli_mdd.csv") == 0);

    const auto csv = ced::load_csv("cli_prices.csv");
    const auto path = ced::prices_to_cumulative_path(ced::column_as_price_series(csv, 0));
    const auto expected = ced::mdd_windows_detailed(path, 10, 1);

    std::ifstream in("cli_mdd.csv");
    std::string line;
    std::getline(in, line);  // manifest comment
    CHECK(line.rfind("# manifest=", 0) == 0);
    std::getline(in, line);
    CHECK(line == "window_start,peak_index,trough_index,mdd");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == expected.size());
    CHECK(slurp("cli_mdd.manifest").find("command=mdd") != std::string::npos);
}

TEST_CASE("risk subcommand on constant prices reports zeros") {
    {
        std::ofstream out("cli_flat.csv");
        out << "date,A\n";
        for (int i = 1; i <= 30; ++i) {
            char date[32];
            std::snprintf(date, sizeof date, "2021-01-%02d", i);
            out << date << ",100\n";
        }
    }
    REQUIRE(run_cli("risk --input cli_flat.csv --alpha 0.9 --window 10 "
                    "--output cli_risk.csv") == 0);
    std::ifstream in("cli_risk.csv");
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "asset,volatility,es,ced");
    while (std::getline(in, line)) {
        const auto first = line.find(',');
        CHECK(line.substr(first + 1) == "0,0,0");
    }
}

TEST_CASE("seeded subcommands are byte-reproducible") {
    // Identical command, identical output path: bytes captured between runs.
    const std::string cmd =
        "simulate sweep --seed 7 --length 4000 --window 50 "
        "--kappas 0.0,0.3 --output cli_sweep.csv";
    REQUIRE(run_cli(cmd) == 0);
    const std::string first_csv = slurp("cli_sweep.csv");
    const std::string first_manifest = slurp("cli_sweep.manifest");
    REQUIRE(!first_csv.empty());
    REQUIRE(run_cli(cmd) == 0);
    CHECK(first_csv == slurp("cli_sweep.csv"));
    CHECK(first_manifest == slurp("cli_sweep.manifest"));

    // A different seed changes the artifact.
    REQUIRE(run_cli("simulate sweep --seed 8 --length 4000 --window 50 "
                    "--kappas 0.0,0.3 --output cli_sweep.csv") == 0);
    CHECK(first_csv != slurp("cli_sweep.csv"));
}

TEST_CASE("optimize subcommand round-trips a scenario file") {
    REQUIRE(run_cli("optimize --simulate --seed 3 --sim-scenarios 20 --sim-periods 5 "
                    "--sim-kappas 0.0,0.2 --sim-sigmas 0.01,0.02 --alpha 0.8 "
                    "--save-scenarios cli_scen.csv --output cli_opt.csv") == 0);
    std::ifstream in("cli_opt.csv");
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "target,status,objective,iterations,w_1,w_2");
    std::getline(in, line);
    CHECK(line.find("optimal") != std::string::npos);

    // Re-running from the saved scenario file reproduces the solve.
    REQUIRE(run_cli("optimize --paths cli_scen.csv --alpha 0.8 "
                    "--output cli_opt2.csv") == 0);
    std::ifstream in2("cli_opt2.csv");
    std::string line2;
    std::getline(in2, line2);
    std::getline(in2, line2);
    std::getline(in2, line2);
    CHECK(line2 == line);
}

TEST_CASE("exit codes distinguish failure classes") {
    CHECK(run_cli("mdd --input does_not_exist.csv") == 3);            // io
    CHECK(run_cli("risk --input cli_prices.csv --alpha 1.5") == 5);   // precondition
    CHECK(run_cli("mdd --input cli_prices.csv --bogus-flag") == 2);   // usage
    CHECK(run_cli("nonsense") == 2);                                  // usage
    {
        std::ofstream out("cli_bad.csv");
        out << "date,A\n2020-01-01,100\n2020-01-02,oops\n";
    }
    CHECK(run_cli("mdd --input cli_bad.csv --window 2") == 4);  // parse
}

TEST_CASE("CED_DATA_DIR resolves inputs not found in the working directory") {
    [[maybe_unused]] int mk = std::system("mkdir -p cli_data_dir");
    write_prices("cli_data_dir/nested_prices.csv");
    std::remove("nested_prices.csv");
    const std::string cmd = std::string("CED_DATA_DIR=cli_data_dir ") + CED_CLI_PATH +
                            " mdd --input nested_prices.csv --window 10 "
                            "--output cli_env_mdd.csv 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(!slurp("cli_env_mdd.csv").empty());
}

TEST_CASE("fixedmix and parity write weight and return artifacts") {
    write_prices("cli_prices.csv");
    REQUIRE(run_cli("fixedmix --input cli_prices.csv --weights 0.6,0.4 "
                    "--rebalance 5 --output cli_fm") == 0);
    const std::string weights = slurp("cli_fm_weights.csv");
    CHECK(weights.find("# manifest=cli_fm.manifest") == 0);
    CHECK(weights.find("date,EQ,BD") != std::string::npos);
    CHECK(!slurp("cli_fm_returns.csv").empty());

    REQUIRE(run_cli("parity --input cli_prices.csv --measure vol --est-window 20 "
                    "--rebalance 10 --output cli_par") == 0);
    CHECK(slurp("cli_par_weights.csv").find("date,EQ,BD") != std::string::npos);
    CHECK(!slurp("cli_par_returns.csv").empty());
}

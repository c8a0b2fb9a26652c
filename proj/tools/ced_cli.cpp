// Batch command line for the drawdown-risk toolkit. Every run writes CSV
// artifacts plus a sidecar manifest echoing the full configuration; seeded
// runs are byte-reproducible.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ced/attribution.hpp"
#include "ced/drawdown.hpp"
#include "ced/io.hpp"
#include "ced/kernels.hpp"
#include "ced/optimizer.hpp"
#include "ced/portfolio.hpp"
#include "ced/riskmeasures.hpp"
#include "ced/simulation.hpp"
#include "ced/timeseries.hpp"

namespace {

using namespace ced;

// Exit codes: 0 ok, 2 usage, 3 missing/unreadable file, 4 malformed data,
// 5 estimator/parameter precondition, 1 anything else.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_io = 3,
    exit_parse = 4,
    exit_precondition = 5,
};

std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("CED_DATA_DIR")) {
        const fs::path joined = fs::path(dir) / path;
        if (fs::exists(joined)) return joined.string();
    }
    throw io_error("cannot open '" + path + "'");
}

std::string manifest_name_for(const std::string& output) {
    const auto dot = output.rfind(".csv");
    if (dot != std::string::npos && dot == output.size() - 4)
        return output.substr(0, dot) + ".manifest";
    return output + ".manifest";
}

std::string base_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

struct PanelInput {
    std::string path;
    bool already_returns = false;
    PathMode mode = PathMode::additive;

    // Per-asset period returns plus the date labels aligned with them.
    AssetMatrix returns;
    std::vector<std::string> dates;
    LoadedCsv raw;

    void load() {
        raw = load_csv(resolve_input(path));
        if (already_returns) {
            returns = raw.data;
            dates = raw.dates;
            return;
        }
        returns.asset_names = raw.data.asset_names;
        returns.columns.resize(raw.data.cols());
        for (std::size_t a = 0; a < raw.data.cols(); ++a)
            returns.columns[a] =
                prices_to_period_returns(column_as_price_series(raw, a)).values;
        dates.assign(raw.dates.begin() + 1, raw.dates.end());
    }

    CumulativeReturnPath path_for(std::size_t asset) const {
        if (already_returns)
            return periods_to_cumulative_path(PeriodReturnSeries{returns.columns[asset]},
                                              mode);
        return prices_to_cumulative_path(column_as_price_series(raw, asset));
    }

    std::size_t asset_index(const std::string& name_or_index) const {
        for (std::size_t a = 0; a < returns.asset_names.size(); ++a)
            if (returns.asset_names[a] == name_or_index) return a;
        try {
            const std::size_t idx = std::stoul(name_or_index);
            if (idx < returns.cols()) return idx;
        } catch (...) {
        }
        throw precondition_error("unknown asset '" + name_or_index + "'");
    }
};

std::vector<double> parse_weights(const std::string& csv, std::size_t expected) {
    std::vector<double> w;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) w.push_back(std::stod(cell));
    if (expected && w.size() != expected)
        throw precondition_error("expected " + std::to_string(expected) +
                                 " weights, got " + std::to_string(w.size()));
    return w;
}

void add_common_manifest(Manifest& m, const std::string& command) {
    m.set("command", command);
    m.set("version", std::string(library_version));
    m.set("kernel_backend", kernels::backend_name(kernels::active_backend()));
}

// ---------------------------------------------------------------------------
// mdd: per-window maximum drawdowns of one asset.

struct MddArgs {
    std::string input, output = "mdd.csv", asset = "0";
    std::size_t window = 125, step = 1;
    bool returns = false;
    std::string mode = "additive";
};

int run_mdd(const MddArgs& args) {
    PanelInput panel{args.input, args.returns,
                     args.mode == "compound" ? PathMode::compound : PathMode::additive};
    panel.load();
    const std::size_t asset = panel.asset_index(args.asset);
    const auto path = panel.path_for(asset);
    const auto windows = mdd_windows_detailed(path, args.window, args.step);

    Manifest m;
    add_common_manifest(m, "mdd");
    m.set("input", args.input);
    m.set("asset", panel.returns.asset_names[asset]);
    m.set("window", args.window);
    m.set("step", args.step);
    m.set("mode", args.mode);
    m.write(manifest_name_for(args.output));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"window_start", "peak_index", "trough_index", "mdd"});
    for (std::size_t w = 0; w < windows.size(); ++w)
        csv.row({std::to_string(w * args.step), std::to_string(windows[w].peak_index),
                 std::to_string(windows[w].trough_index),
                 format_double(windows[w].value)});
    return exit_ok;
}

// ---------------------------------------------------------------------------
// risk: vol / ES / CED table per asset plus the weighted portfolio.

struct RiskArgs {
    std::string input, output = "risk.csv", weights;
    double alpha = 0.9;
    std::size_t window = 125, step = 1;
    double annualization = 252.0;
    bool returns = false;
    std::string mode = "additive";
};

int run_risk(const RiskArgs& args) {
    PanelInput panel{args.input, args.returns,
                     args.mode == "compound" ? PathMode::compound : PathMode::additive};
    panel.load();
    const ConfidenceLevel alpha(args.alpha);
    const std::size_t m = panel.returns.cols();
    std::vector<double> w =
        args.weights.empty()
            ? std::vector<double>(m, 1.0 / static_cast<double>(m))
            : parse_weights(args.weights, m);

    Manifest man;
    add_common_manifest(man, "risk");
    man.set("input", args.input);
    man.set("alpha", args.alpha);
    man.set("window", args.window);
    man.set("step", args.step);
    man.set("annualization", args.annualization);
    man.set("mode", args.mode);
    for (std::size_t a = 0; a < m; ++a)
        man.set("weight." + panel.returns.asset_names[a], w[a]);
    man.write(manifest_name_for(args.output));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"asset", "volatility", "es", "ced"});
    auto emit = [&](const std::string& name, const PeriodReturnSeries& r,
                    const CumulativeReturnPath& path) {
        csv.row({name, format_double(volatility(r, args.annualization)),
                 format_double(expected_shortfall(r, alpha)),
                 format_double(ced_measure(path, args.window, alpha, args.step))});
    };
    for (std::size_t a = 0; a < m; ++a)
        emit(panel.returns.asset_names[a], PeriodReturnSeries{panel.returns.columns[a]},
             panel.path_for(a));

    PeriodReturnSeries port;
    port.values.resize(panel.returns.rows());
    for (std::size_t t = 0; t < port.values.size(); ++t) {
        double acc = 0.0;
        for (std::size_t a = 0; a < m; ++a) acc += w[a] * panel.returns.columns[a][t];
        port.values[t] = acc;
    }
    emit("PORTFOLIO", port, periods_to_cumulative_path(port, PathMode::additive));
    return exit_ok;
}

// ---------------------------------------------------------------------------
// attribute: rolling Euler decomposition under one measure.

struct AttributeArgs {
    std::string input, output = "attribution.csv", weights, measure = "vol";
    double alpha = 0.9;
    std::size_t window = 250, path_window = 0, eval_step = 1;
    double annualization = 1.0;
    bool returns = false;
    std::string mode = "additive";
};

RiskMeasureKind measure_from_string(const std::string& s) {
    if (s == "vol") return RiskMeasureKind::volatility;
    if (s == "es") return RiskMeasureKind::expected_shortfall;
    if (s == "ced") return RiskMeasureKind::ced;
    throw precondition_error("unknown measure '" + s + "' (vol|es|ced)");
}

int run_attribute(const AttributeArgs& args) {
    PanelInput panel{args.input, args.returns,
                     args.mode == "compound" ? PathMode::compound : PathMode::additive};
    panel.load();
    const RiskMeasureKind measure = measure_from_string(args.measure);
    const auto w = parse_weights(args.weights, panel.returns.cols());

    auto points = rolling_attribution(panel.returns, w, measure, args.window,
                                      ConfidenceLevel(args.alpha), args.path_window,
                                      args.eval_step);

    Manifest man;
    add_common_manifest(man, "attribute");
    man.set("input", args.input);
    man.set("measure", args.measure);
    man.set("alpha", args.alpha);
    man.set("window", args.window);
    man.set("path_window", args.path_window);
    man.set("eval_step", args.eval_step);
    man.set("weights", args.weights);
    man.write(manifest_name_for(args.output));

    const double ann =
        measure == RiskMeasureKind::volatility ? std::sqrt(args.annualization) : 1.0;
    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"date", "asset", "mrc", "rc", "frc", "standalone", "gen_corr"});
    for (const auto& point : points) {
        const std::string date = point.end - 1 < panel.dates.size()
                                     ? panel.dates[point.end - 1]
                                     : std::to_string(point.end - 1);
        for (std::size_t a = 0; a < panel.returns.cols(); ++a)
            csv.row({date, panel.returns.asset_names[a],
                     format_double(point.report.mrc[a] * ann),
                     format_double(point.report.rc[a] * ann),
                     format_double(point.report.frc[a]),
                     format_double(point.report.standalone[a] * ann),
                     format_double(point.report.gen_corr[a])});
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// optimize: minimum-CED weights from a scenario file or simulated scenarios.

struct OptimizeArgs {
    std::string paths, output = "optimize.csv", targets;
    double alpha = 0.9;
    bool no_long_only = false, no_budget = false;
    bool simulate = false;
    std::size_t sim_scenarios = 50, sim_periods = 10;
    std::string sim_kappas = "0.0,0.0", sim_sigmas = "0.01,0.01";
    std::uint64_t seed = 1;
    std::string save_scenarios;
};

ScenarioSet simulated_scenarios(const OptimizeArgs& args) {
    const auto kappas = parse_weights(args.sim_kappas, 0);
    const auto sigmas = parse_weights(args.sim_sigmas, 0);
    if (kappas.size() != sigmas.size() || kappas.empty())
        throw precondition_error("--sim-kappas and --sim-sigmas must list one value per asset");
    ScenarioSet s;
    s.resize(args.sim_scenarios, args.sim_periods, kappas.size());
    for (std::size_t a = 0; a < kappas.size(); ++a) {
        for (std::size_t i = 0; i < s.n_scenarios; ++i) {
            auto r = ar1_simulate({kappas[a], sigmas[a]}, s.n_periods,
                                  derive_seed(args.seed, a * s.n_scenarios + i));
            for (std::size_t j = 0; j < s.n_periods; ++j) s.at(i, j, a) = r.values[j];
        }
    }
    return s;
}

int run_optimize(const OptimizeArgs& args) {
    ScenarioSet scenarios;
    if (args.simulate)
        scenarios = simulated_scenarios(args);
    else if (!args.paths.empty())
        scenarios = load_scenario_csv(resolve_input(args.paths));
    else
        throw precondition_error("provide --paths <csv> or --simulate");

    OptimizerConstraints constraints;
    constraints.long_only = !args.no_long_only;
    constraints.budget = !args.no_budget;
    const ConfidenceLevel alpha(args.alpha);

    Manifest man;
    add_common_manifest(man, "optimize");
    man.set("alpha", args.alpha);
    man.set("long_only", std::string(constraints.long_only ? "true" : "false"));
    man.set("budget", std::string(constraints.budget ? "true" : "false"));
    man.set("scenarios", scenarios.n_scenarios);
    man.set("periods", scenarios.n_periods);
    man.set("assets", scenarios.n_assets);
    if (args.simulate) {
        man.set("simulate", std::string("true"));
        man.set("seed", static_cast<std::size_t>(args.seed));
        man.set("sim_kappas", args.sim_kappas);
        man.set("sim_sigmas", args.sim_sigmas);
    } else {
        man.set("paths", args.paths);
    }
    if (!args.targets.empty()) man.set("targets", args.targets);
    man.write(manifest_name_for(args.output));

    if (!args.save_scenarios.empty())
        write_scenario_csv(args.save_scenarios, scenarios,
                           base_name(manifest_name_for(args.output)));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    std::vector<std::string> header{"target", "status", "objective", "iterations"};
    for (std::size_t a = 0; a < scenarios.n_assets; ++a)
        header.push_back("w_" + std::to_string(a + 1));
    csv.header(header);

    auto emit = [&](const std::string& target, const OptResult& res) {
        std::vector<std::string> row{target, solve_status_name(res.status),
                                     res.status == SolveStatus::optimal
                                         ? format_double(res.objective)
                                         : "",
                                     std::to_string(res.iterations)};
        for (std::size_t a = 0; a < scenarios.n_assets; ++a)
            row.push_back(res.status == SolveStatus::optimal
                              ? format_double(res.weights[a])
                              : "");
        csv.row(row);
    };

    if (args.targets.empty()) {
        emit("", minimize_ced(scenarios, alpha, constraints));
    } else {
        const auto targets = parse_weights(args.targets, 0);
        const auto frontier = efficient_frontier(scenarios, alpha, targets, constraints);
        for (std::size_t i = 0; i < targets.size(); ++i)
            emit(format_double(targets[i]), frontier[i]);
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// simulate sweep | two-asset | kappa-corr

struct SweepArgs {
    std::string kappas = "0.0,0.1,0.2,0.3,0.4,0.5", output = "sweep.csv";
    double sigma_eps = 0.1;
    std::size_t length = 10000, window = 125;
    double alpha = 0.9;
    std::uint64_t seed = 1;
};

int run_sweep(const SweepArgs& args) {
    const auto kappas = parse_weights(args.kappas, 0);
    auto rows = kappa_sweep(kappas, args.sigma_eps, args.length,
                            ConfidenceLevel(args.alpha), args.window, args.seed);
    Manifest man;
    add_common_manifest(man, "simulate sweep");
    man.set("kappas", args.kappas);
    man.set("sigma_eps", args.sigma_eps);
    man.set("length", args.length);
    man.set("window", args.window);
    man.set("alpha", args.alpha);
    man.set("seed", static_cast<std::size_t>(args.seed));
    man.write(manifest_name_for(args.output));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"kappa", "volatility", "es", "ced"});
    for (const auto& row : rows)
        csv.row({format_double(row.kappa), format_double(row.volatility),
                 format_double(row.es), format_double(row.ced)});
    return exit_ok;
}

struct TwoAssetArgs {
    std::string output = "two_asset.csv";
    TwoAssetStudyConfig cfg;
};

int run_two_asset(const TwoAssetArgs& args) {
    auto result = two_asset_study(args.cfg);
    Manifest man;
    add_common_manifest(man, "simulate two-asset");
    man.set("kappa_e", args.cfg.kappa_e);
    man.set("kappa_b", args.cfg.kappa_b);
    man.set("vol_e", args.cfg.vol_e);
    man.set("vol_b", args.cfg.vol_b);
    man.set("weight_e", args.cfg.weight_e);
    man.set("weight_b", args.cfg.weight_b);
    man.set("length", args.cfg.length);
    man.set("window", args.cfg.window);
    man.set("alpha", args.cfg.alpha);
    man.set("seed", static_cast<std::size_t>(args.cfg.seed));
    man.write(manifest_name_for(args.output));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"run", "measure", "asset", "frc", "mrc", "rc", "standalone", "total"});
    auto emit = [&](const std::string& run, const RiskReport& report) {
        const char* names[2] = {"E", "B"};
        for (std::size_t a = 0; a < 2; ++a)
            csv.row({run, risk_measure_name(report.measure), names[a],
                     format_double(report.frc[a]), format_double(report.mrc[a]),
                     format_double(report.rc[a]), format_double(report.standalone[a]),
                     format_double(report.total)});
    };
    emit("main", result.vol);
    emit("main", result.es);
    emit("main", result.ced);
    emit("control", result.vol_residual);
    emit("control", result.es_residual);
    emit("control", result.ced_residual);
    return exit_ok;
}

struct KappaCorrArgs {
    std::string input, asset = "0", output = "kappa_corr.csv";
    bool returns = false;
    double kappa = 0.3, sigma_eps = 0.01;
    std::size_t length = 60000;
    std::uint64_t seed = 1;
    std::size_t est_window = 500, window = 125, stride = 250;
    double alpha = 0.9;
};

int run_kappa_corr(const KappaCorrArgs& args) {
    PeriodReturnSeries series;
    if (!args.input.empty()) {
        PanelInput panel{args.input, args.returns, PathMode::additive};
        panel.load();
        series.values = panel.returns.columns[panel.asset_index(args.asset)];
    } else {
        series = ar1_simulate({args.kappa, args.sigma_eps}, args.length, args.seed);
    }
    auto corr = kappa_risk_correlation(series, args.est_window, args.window,
                                       ConfidenceLevel(args.alpha), args.stride);

    Manifest man;
    add_common_manifest(man, "simulate kappa-corr");
    if (!args.input.empty()) {
        man.set("input", args.input);
        man.set("asset", args.asset);
    } else {
        man.set("kappa", args.kappa);
        man.set("sigma_eps", args.sigma_eps);
        man.set("length", args.length);
        man.set("seed", static_cast<std::size_t>(args.seed));
    }
    man.set("est_window", args.est_window);
    man.set("window", args.window);
    man.set("stride", args.stride);
    man.set("alpha", args.alpha);
    man.write(manifest_name_for(args.output));

    CsvWriter csv(args.output, base_name(manifest_name_for(args.output)));
    csv.header({"corr_vol", "corr_es", "corr_ced", "n_windows"});
    csv.row({format_double(corr.vol), format_double(corr.es), format_double(corr.ced),
             std::to_string(corr.n_windows)});
    return exit_ok;
}

// ---------------------------------------------------------------------------
// parity and fixedmix: weight-history and return artifacts.

std::size_t parse_rebalance(const std::string& s) {
    if (s == "monthly") return 21;
    if (s == "quarterly") return 63;
    try {
        const long v = std::stol(s);
        if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
    throw precondition_error("bad --rebalance '" + s + "' (monthly|quarterly|<periods>)");
}

void write_portfolio_artifacts(const std::string& base, const std::string& manifest,
                               const std::vector<std::string>& dates,
                               std::size_t first_period,
                               const std::vector<std::string>& asset_names,
                               const std::vector<std::vector<double>>& weights,
                               const PeriodReturnSeries& portfolio) {
    CsvWriter wcsv(base + "_weights.csv", manifest);
    std::vector<std::string> header{"date"};
    for (const auto& a : asset_names) header.push_back(a);
    wcsv.header(header);
    for (std::size_t t = 0; t < weights.size(); ++t) {
        const std::size_t idx = first_period + t;
        std::vector<std::string> row{idx < dates.size() ? dates[idx]
                                                        : std::to_string(idx)};
        for (double w : weights[t]) row.push_back(format_double(w));
        wcsv.row(row);
    }
    CsvWriter rcsv(base + "_returns.csv", manifest);
    rcsv.header({"date", "return"});
    for (std::size_t t = 0; t < portfolio.values.size(); ++t) {
        const std::size_t idx = first_period + t;
        rcsv.row({idx < dates.size() ? dates[idx] : std::to_string(idx),
                  format_double(portfolio.values[t])});
    }
}

struct ParityArgs {
    std::string input, output = "parity", measure = "vol", rebalance = "monthly";
    double alpha = 0.9;
    double window_years = 3.0;
    std::size_t est_window = 0;  // overrides window_years when nonzero
    std::size_t path_window = 125;
    bool returns = false;
};

int run_parity(const ParityArgs& args) {
    PanelInput panel{args.input, args.returns, PathMode::additive};
    panel.load();
    ParitySpec spec;
    spec.measure = measure_from_string(args.measure);
    spec.alpha = args.alpha;
    spec.estimation_window =
        args.est_window ? args.est_window
                        : static_cast<std::size_t>(args.window_years * 252.0);
    spec.rebalance_frequency = parse_rebalance(args.rebalance);
    spec.ced_path_len = args.path_window;

    auto result = risk_parity(panel.returns, spec);

    const std::string manifest = manifest_name_for(args.output);
    Manifest man;
    add_common_manifest(man, "parity");
    man.set("input", args.input);
    man.set("measure", args.measure);
    man.set("alpha", args.alpha);
    man.set("est_window", spec.estimation_window);
    man.set("rebalance", spec.rebalance_frequency);
    man.set("path_window", args.path_window);
    std::size_t fallbacks = 0;
    for (const auto& d : result.dates)
        if (d.equal_weight_fallback) ++fallbacks;
    man.set("equal_weight_fallbacks", fallbacks);
    man.write(manifest);

    write_portfolio_artifacts(args.output, base_name(manifest), panel.dates,
                              spec.estimation_window, panel.returns.asset_names,
                              result.weight_history, result.portfolio);
    return exit_ok;
}

struct FixedMixArgs {
    std::string input, output = "fixedmix", weights, rebalance = "monthly";
    bool returns = false;
};

int run_fixedmix(const FixedMixArgs& args) {
    PanelInput panel{args.input, args.returns, PathMode::additive};
    panel.load();
    RebalancePolicy policy;
    policy.target_weights = parse_weights(args.weights, panel.returns.cols());
    policy.frequency = parse_rebalance(args.rebalance);
    auto result = fixed_mix(panel.returns, policy);

    const std::string manifest = manifest_name_for(args.output);
    Manifest man;
    add_common_manifest(man, "fixedmix");
    man.set("input", args.input);
    man.set("weights", args.weights);
    man.set("rebalance", policy.frequency);
    man.write(manifest);

    write_portfolio_artifacts(args.output, base_name(manifest), panel.dates, 0,
                              panel.returns.asset_names, result.weight_history,
                              result.portfolio);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drawdown-risk analytics: distributions, attribution, optimization"};
    app.require_subcommand(1);

    MddArgs mdd_args;
    auto* mdd_cmd = app.add_subcommand("mdd", "Rolling maximum-drawdown distribution");
    mdd_cmd->add_option("--input", mdd_args.input)->required();
    mdd_cmd->add_option("--output", mdd_args.output);
    mdd_cmd->add_option("--asset", mdd_args.asset);
    mdd_cmd->add_option("--window", mdd_args.window);
    mdd_cmd->add_option("--step", mdd_args.step);
    mdd_cmd->add_flag("--returns", mdd_args.returns,
                      "input holds period returns, not prices");
    mdd_cmd->add_option("--mode", mdd_args.mode)
        ->check(CLI::IsMember({"additive", "compound"}));

    RiskArgs risk_args;
    auto* risk_cmd = app.add_subcommand("risk", "Volatility / ES / CED table");
    risk_cmd->add_option("--input", risk_args.input)->required();
    risk_cmd->add_option("--output", risk_args.output);
    risk_cmd->add_option("--alpha", risk_args.alpha);
    risk_cmd->add_option("--window", risk_args.window);
    risk_cmd->add_option("--step", risk_args.step);
    risk_cmd->add_option("--annualization", risk_args.annualization);
    risk_cmd->add_option("--weights", risk_args.weights);
    risk_cmd->add_flag("--returns", risk_args.returns);
    risk_cmd->add_option("--mode", risk_args.mode)
        ->check(CLI::IsMember({"additive", "compound"}));

    AttributeArgs attr_args;
    auto* attr_cmd = app.add_subcommand("attribute", "Rolling risk contributions");
    attr_cmd->add_option("--input", attr_args.input)->required();
    attr_cmd->add_option("--output", attr_args.output);
    attr_cmd->add_option("--measure", attr_args.measure)
        ->check(CLI::IsMember({"vol", "es", "ced"}));
    attr_cmd->add_option("--alpha", attr_args.alpha);
    attr_cmd->add_option("--window", attr_args.window);
    attr_cmd->add_option("--path-window", attr_args.path_window,
                         "drawdown sub-path length (ced measure; 0 = window/2)");
    attr_cmd->add_option("--eval-step", attr_args.eval_step);
    attr_cmd->add_option("--annualization", attr_args.annualization);
    attr_cmd->add_option("--weights", attr_args.weights)->required();
    attr_cmd->add_flag("--returns", attr_args.returns);
    attr_cmd->add_option("--mode", attr_args.mode)
        ->check(CLI::IsMember({"additive", "compound"}));

    OptimizeArgs opt_args;
    auto* opt_cmd = app.add_subcommand("optimize", "Minimum-CED weights");
    opt_cmd->add_option("--paths", opt_args.paths, "scenario CSV");
    opt_cmd->add_option("--output", opt_args.output);
    opt_cmd->add_option("--alpha", opt_args.alpha);
    opt_cmd->add_option("--targets", opt_args.targets, "return targets r1,r2,...");
    opt_cmd->add_flag("--no-long-only", opt_args.no_long_only);
    opt_cmd->add_flag("--no-budget", opt_args.no_budget);
    opt_cmd->add_flag("--simulate", opt_args.simulate, "simulate AR(1) scenarios");
    opt_cmd->add_option("--sim-scenarios", opt_args.sim_scenarios);
    opt_cmd->add_option("--sim-periods", opt_args.sim_periods);
    opt_cmd->add_option("--sim-kappas", opt_args.sim_kappas);
    opt_cmd->add_option("--sim-sigmas", opt_args.sim_sigmas);
    opt_cmd->add_option("--seed", opt_args.seed);
    opt_cmd->add_option("--save-scenarios", opt_args.save_scenarios);

    auto* sim_cmd = app.add_subcommand("simulate", "AR(1) Monte-Carlo studies");
    sim_cmd->require_subcommand(1);

    SweepArgs sweep_args;
    auto* sweep_cmd = sim_cmd->add_subcommand("sweep", "Risk measures vs kappa");
    sweep_cmd->add_option("--kappas", sweep_args.kappas);
    sweep_cmd->add_option("--sigma-eps", sweep_args.sigma_eps);
    sweep_cmd->add_option("--length", sweep_args.length);
    sweep_cmd->add_option("--window", sweep_args.window);
    sweep_cmd->add_option("--alpha", sweep_args.alpha);
    sweep_cmd->add_option("--seed", sweep_args.seed);
    sweep_cmd->add_option("--output", sweep_args.output);

    TwoAssetArgs two_args;
    auto* two_cmd = sim_cmd->add_subcommand("two-asset", "Fixed-mix contribution study");
    two_cmd->add_option("--kappa-e", two_args.cfg.kappa_e);
    two_cmd->add_option("--kappa-b", two_args.cfg.kappa_b);
    two_cmd->add_option("--vol-e", two_args.cfg.vol_e);
    two_cmd->add_option("--vol-b", two_args.cfg.vol_b);
    two_cmd->add_option("--weight-e", two_args.cfg.weight_e);
    two_cmd->add_option("--weight-b", two_args.cfg.weight_b);
    two_cmd->add_option("--length", two_args.cfg.length);
    two_cmd->add_option("--window", two_args.cfg.window);
    two_cmd->add_option("--alpha", two_args.cfg.alpha);
    two_cmd->add_option("--seed", two_args.cfg.seed);
    two_cmd->add_option("--annualization", two_args.cfg.periods_per_year);
    two_cmd->add_option("--output", two_args.output);

    KappaCorrArgs kc_args;
    auto* kc_cmd = sim_cmd->add_subcommand("kappa-corr",
                                           "Correlation of fitted kappa with risk");
    kc_cmd->add_option("--input", kc_args.input, "optional price/return CSV");
    kc_cmd->add_option("--asset", kc_args.asset);
    kc_cmd->add_flag("--returns", kc_args.returns);
    kc_cmd->add_option("--kappa", kc_args.kappa);
    kc_cmd->add_option("--sigma-eps", kc_args.sigma_eps);
    kc_cmd->add_option("--length", kc_args.length);
    kc_cmd->add_option("--seed", kc_args.seed);
    kc_cmd->add_option("--est-window", kc_args.est_window);
    kc_cmd->add_option("--window", kc_args.window);
    kc_cmd->add_option("--stride", kc_args.stride);
    kc_cmd->add_option("--alpha", kc_args.alpha);
    kc_cmd->add_option("--output", kc_args.output);

    ParityArgs parity_args;
    auto* parity_cmd = app.add_subcommand("parity", "Equal-risk-contribution weights");
    parity_cmd->add_option("--input", parity_args.input)->required();
    parity_cmd->add_option("--output", parity_args.output, "artifact base name");
    parity_cmd->add_option("--measure", parity_args.measure)
        ->check(CLI::IsMember({"vol", "es", "ced"}));
    parity_cmd->add_option("--alpha", parity_args.alpha);
    parity_cmd->add_option("--window-years", parity_args.window_years);
    parity_cmd->add_option("--est-window", parity_args.est_window);
    parity_cmd->add_option("--path-window", parity_args.path_window);
    parity_cmd->add_option("--rebalance", parity_args.rebalance);
    parity_cmd->add_flag("--returns", parity_args.returns);

    FixedMixArgs fm_args;
    auto* fm_cmd = app.add_subcommand("fixedmix", "Fixed-mix backtest");
    fm_cmd->add_option("--input", fm_args.input)->required();
    fm_cmd->add_option("--output", fm_args.output, "artifact base name");
    fm_cmd->add_option("--weights", fm_args.weights)->required();
    fm_cmd->add_option("--rebalance", fm_args.rebalance);
    fm_cmd->add_flag("--returns", fm_args.returns);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ced: error kind=usage msg=\"" << e.what() << "\"\n";
        return exit_usage;
    }

    try {
        if (*mdd_cmd) return run_mdd(mdd_args);
        if (*risk_cmd) return run_risk(risk_args);
        if (*attr_cmd) return run_attribute(attr_args);
        if (*opt_cmd) return run_optimize(opt_args);
        if (*sweep_cmd) return run_sweep(sweep_args);
        if (*two_cmd) return run_two_asset(two_args);
        if (*kc_cmd) return run_kappa_corr(kc_args);
        if (*parity_cmd) return run_parity(parity_args);
        if (*fm_cmd) return run_fixedmix(fm_args);
        std::cerr << "ced: error kind=usage msg=\"no subcommand\"\n";
        return exit_usage;
    } catch (const io_error& e) {
        std::cerr << "ced: error kind=io msg=\"" << e.what() << "\"\n";
        return exit_io;
    } catch (const parse_error& e) {
        std::cerr << "ced: error kind=parse msg=\"" << e.what() << "\"\n";
        return exit_parse;
    } catch (const precondition_error& e) {
        std::cerr << "ced: error kind=precondition msg=\"" << e.what() << "\"\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        std::cerr << "ced: error kind=internal msg=\"" << e.what() << "\"\n";
        return exit_internal;
    }
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ced/attribution.hpp"
#include "ced/drawdown.hpp"
#include "ced/optimizer.hpp"

namespace ced {

/// Shortest round-trip decimal rendering (deterministic across runs).
std::string format_double(double v);

/// Run manifest: flat key=value lines, sorted by key, UTF-8, no timestamps,
/// so a repeated run writes identical bytes.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::size_t value);
    void write(const std::string& path) const;

private:
    std::map<std::string, std::string> entries_;
};

/// CSV artifact writer. The first line names the sidecar manifest; `#` lines
/// are comments for every reader in this project.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& manifest_name);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    ~CsvWriter();

private:
    struct Impl;
    Impl* impl_;
};

/// Scenario panel: columns scenario_id, period, then one column per asset.
/// Scenarios must be rectangular; rows may appear in any order.
ScenarioSet load_scenario_csv(const std::string& path);

void write_scenario_csv(const std::string& path, const ScenarioSet& scenarios,
                        const std::string& manifest_name);

}  // namespace ced

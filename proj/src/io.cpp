#include "ced/io.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace ced {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void Manifest::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}
void Manifest::set(const std::string& key, double value) {
    entries_[key] = format_double(value);
}
void Manifest::set(const std::string& key, std::size_t value) {
    entries_[key] = std::to_string(value);
}

void Manifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write manifest '" + path + "'");
    for (const auto& [k, v] : entries_) out << k << "=" << v << "\n";
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::string& manifest_name)
    : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw io_error("cannot write '" + path + "'");
    }
    impl_->out << "# manifest=" << manifest_name << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) impl_->out << ",";
        impl_->out << cells[i];
    }
    impl_->out << "\n";
}

CsvWriter::~CsvWriter() {
    delete impl_;
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

double to_double(const std::string& s, std::size_t row_no) {
    double v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw parse_error("unparseable number '" + s + "' at row " +
                          std::to_string(row_no));
    return v;
}

long to_long(const std::string& s, std::size_t row_no) {
    long v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw parse_error("unparseable integer '" + s + "' at row " +
                          std::to_string(row_no));
    return v;
}

}  // namespace

ScenarioSet load_scenario_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");

    std::string line;
    std::size_t row_no = 0;
    if (!std::getline(in, line)) throw parse_error("empty scenario file '" + path + "'");
    ++row_no;
    while (!line.empty() && line[0] == '#') {
        if (!std::getline(in, line)) throw parse_error("scenario file has no header");
        ++row_no;
    }
    const auto header = split_cells(line);
    if (header.size() < 3 || header[0] != "scenario_id" || header[1] != "period")
        throw parse_error("scenario header must be scenario_id,period,<assets...>");
    const std::size_t m = header.size() - 2;

    // (scenario, period) -> returns; order in the file is not significant.
    std::map<std::pair<long, long>, std::vector<double>> cells;
    long max_scenario = -1, max_period = -1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line[0] == '#') continue;
        const auto row = split_cells(line);
        if (row.size() != header.size())
            throw parse_error("row " + std::to_string(row_no) + " has " +
                              std::to_string(row.size()) + " cells, expected " +
                              std::to_string(header.size()));
        const long scen = to_long(row[0], row_no);
        const long per = to_long(row[1], row_no);
        if (scen < 0 || per < 0)
            throw parse_error("negative scenario/period id at row " +
                              std::to_string(row_no));
        std::vector<double> vals(m);
        for (std::size_t a = 0; a < m; ++a) vals[a] = to_double(row[a + 2], row_no);
        if (!cells.emplace(std::make_pair(scen, per), std::move(vals)).second)
            throw parse_error("duplicate (scenario, period) at row " +
                              std::to_string(row_no));
        max_scenario = std::max(max_scenario, scen);
        max_period = std::max(max_period, per);
    }
    if (max_scenario < 0) throw parse_error("scenario file has no data rows");

    ScenarioSet out;
    out.resize(static_cast<std::size_t>(max_scenario) + 1,
               static_cast<std::size_t>(max_period) + 1, m);
    if (cells.size() != out.n_scenarios * out.n_periods)
        throw parse_error("scenario set is not rectangular: " +
                          std::to_string(cells.size()) + " rows for " +
                          std::to_string(out.n_scenarios) + " x " +
                          std::to_string(out.n_periods) + " grid");
    for (const auto& [key, vals] : cells)
        for (std::size_t a = 0; a < m; ++a)
            out.at(static_cast<std::size_t>(key.first),
                   static_cast<std::size_t>(key.second), a) = vals[a];
    return out;
}

void write_scenario_csv(const std::string& path, const ScenarioSet& scenarios,
                        const std::string& manifest_name) {
    CsvWriter csv(path, manifest_name);
    std::vector<std::string> header{"scenario_id", "period"};
    for (std::size_t a = 0; a < scenarios.n_assets; ++a)
        header.push_back("asset" + std::to_string(a + 1));
    csv.header(header);
    for (std::size_t i = 0; i < scenarios.n_scenarios; ++i)
        for (std::size_t j = 0; j < scenarios.n_periods; ++j) {
            std::vector<std::string> row{std::to_string(i), std::to_string(j)};
            for (std::size_t a = 0; a < scenarios.n_assets; ++a)
                row.push_back(format_double(scenarios.at(i, j, a)));
            csv.row(row);
        }
}

}  // namespace ced

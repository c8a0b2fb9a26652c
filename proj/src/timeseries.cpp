#include "ced/timeseries.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ced {

CumulativeReturnPath prices_to_cumulative_path(const PriceSeries& prices) {
    const auto& p = prices.prices;
    if (p.size() < 2)
        throw precondition_error("price series needs at least 2 points, got " +
                                 std::to_string(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0) || !std::isfinite(p[i]))
            throw precondition_error("non-positive or non-finite price at index " +
                                     std::to_string(i));
    }
    CumulativeReturnPath path;
    path.values.resize(p.size());
    path.values[0] = 0.0;
    const double p0 = p[0];
    for (std::size_t j = 1; j < p.size(); ++j) path.values[j] = p[j] / p0 - 1.0;
    return path;
}

CumulativeReturnPath periods_to_cumulative_path(const PeriodReturnSeries& returns,
                                                PathMode mode) {
    CumulativeReturnPath path;
    path.values.resize(returns.size() + 1);
    path.values[0] = 0.0;
    if (mode == PathMode::additive) {
        double acc = 0.0;
        for (std::size_t k = 0; k < returns.size(); ++k) {
            acc += returns.values[k];
            path.values[k + 1] = acc;
        }
    } else {
        double growth = 1.0;
        for (std::size_t k = 0; k < returns.size(); ++k) {
            const double r = returns.values[k];
            if (r <= -1.0)
                throw precondition_error("compound mode rejects return <= -1 at index " +
                                         std::to_string(k));
            growth *= 1.0 + r;
            path.values[k + 1] = growth - 1.0;
        }
    }
    return path;
}

PeriodReturnSeries prices_to_period_returns(const PriceSeries& prices) {
    const auto& p = prices.prices;
    if (p.size() < 2)
        throw precondition_error("price series needs at least 2 points for returns");
    PeriodReturnSeries out;
    out.values.resize(p.size() - 1);
    for (std::size_t t = 1; t < p.size(); ++t) {
        if (!(p[t - 1] > 0.0))
            throw precondition_error("non-positive price at index " +
                                     std::to_string(t - 1));
        out.values[t - 1] = p[t] / p[t - 1] - 1.0;
    }
    return out;
}

std::size_t rolling_window_count(std::size_t source_len, std::size_t window_len,
                                 std::size_t step) {
    if (window_len == 0 || step == 0)
        throw precondition_error("window length and step must be >= 1");
    if (window_len > source_len)
        throw precondition_error("window length " + std::to_string(window_len) +
                                 " exceeds series length " + std::to_string(source_len));
    return (source_len - window_len) / step + 1;
}

std::vector<CumulativeReturnPath> rolling_windows(const CumulativeReturnPath& source,
                                                  std::size_t window_len,
                                                  std::size_t step) {
    const std::size_t count = rolling_window_count(source.size(), window_len, step);
    std::vector<CumulativeReturnPath> windows;
    windows.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t start = w * step;
        CumulativeReturnPath win;
        win.values.resize(window_len);
        const double anchor = source.values[start];
        for (std::size_t j = 0; j < window_len; ++j)
            win.values[j] = source.values[start + j] - anchor;
        win.values[0] = 0.0;
        windows.push_back(std::move(win));
    }
    return windows;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool looks_like_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

double parse_number(const std::string& cell, std::size_t row_no) {
    double v{};
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw parse_error("unparseable number '" + cell + "' at row " +
                          std::to_string(row_no));
    return v;
}

}  // namespace

LoadedCsv load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");

    std::string line;
    std::size_t row_no = 0;
    // Header: date column plus one column per asset.
    if (!std::getline(in, line)) throw parse_error("empty file '" + path + "'");
    ++row_no;
    auto header = split_row(line);
    if (header.size() < 2)
        throw parse_error("header must name a date column and at least one asset");

    LoadedCsv out;
    const std::size_t n_assets = header.size() - 1;
    out.data.asset_names.reserve(n_assets);
    for (std::size_t a = 1; a < header.size(); ++a)
        out.data.asset_names.push_back(trimmed(header[a]));
    out.data.columns.assign(n_assets, {});

    std::string prev_date;
    while (std::getline(in, line)) {
        ++row_no;
        if (trimmed(line).empty()) continue;
        if (line[0] == '#') continue;
        auto cells = split_row(line);
        if (cells.size() != header.size())
            throw parse_error("row " + std::to_string(row_no) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        bool missing = false;
        for (const auto& c : cells)
            if (trimmed(c).empty()) missing = true;
        if (missing) {
            ++out.dropped_rows;
            continue;
        }
        const std::string date = trimmed(cells[0]);
        if (!looks_like_iso_date(date))
            throw parse_error("unparseable date '" + date + "' at row " +
                              std::to_string(row_no));
        if (!prev_date.empty() && !(prev_date < date))
            throw parse_error("dates not strictly increasing at row " +
                              std::to_string(row_no));
        prev_date = date;
        out.dates.push_back(date);
        for (std::size_t a = 0; a < n_assets; ++a)
            out.data.columns[a].push_back(parse_number(trimmed(cells[a + 1]), row_no));
    }
    if (out.dates.size() < 2)
        throw parse_error("'" + path + "' has fewer than 2 usable rows");
    return out;
}

PriceSeries column_as_price_series(const LoadedCsv& csv, std::size_t column) {
    if (column >= csv.data.cols())
        throw precondition_error("column index out of range");
    return PriceSeries{csv.dates, csv.data.columns[column]};
}

}  // namespace ced

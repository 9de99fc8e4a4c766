#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bregman/common.hpp"
#include "bregman/curves.hpp"

namespace bregman {

struct io_error : error {
    using error::error;
};

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Headerless two-column CSV: abscissa,ordinate per line. %.17g round-trips
// doubles exactly.
inline void write_curve_csv(const std::string& path, const Curve& c) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < c.grid.size(); ++i)
        out << format_double(c.grid[i]) << ',' << format_double(c.values[i]) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

inline Curve read_curve_csv(const std::string& path, Axis axis = Axis::probability) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    Curve c;
    c.axis = axis;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw io_error(path + ":" + std::to_string(lineno) + ": expected two comma-separated fields");
        c.grid.push_back(std::stod(line.substr(0, comma)));
        c.values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (c.grid.empty()) throw io_error(path + ": empty curve file");
    return c;
}

// Strict numeric CSV with a required header row. Missing or non-numeric
// fields are hard errors carrying the row number.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return columns[i];
        throw io_error("no such column: " + name);
    }
    bool has_column(const std::string& name) const {
        for (const auto& h : header)
            if (h == name) return true;
        return false;
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CsvTable t;
    t.header = split_csv_line(line);
    if (t.header.empty()) throw io_error(path + ": empty header row");
    t.columns.assign(t.header.size(), {});

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != t.header.size())
            throw io_error(path + ":" + std::to_string(lineno) + ": expected " +
                           std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string& f = fields[i];
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
                throw io_error(path + ":" + std::to_string(lineno) + ": field '" + f +
                               "' in column '" + t.header[i] + "' is not a number");
            t.columns[i].push_back(v);
        }
    }
    return t;
}

inline void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out << t.header[i] << (i + 1 < t.header.size() ? ',' : '\n');
    if (t.columns.empty()) return;
    const std::size_t rows = t.columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << format_double(t.columns[i][r]) << (i + 1 < t.columns.size() ? ',' : '\n');
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace bregman

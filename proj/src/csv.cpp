#include "ctsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ctsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

void emit_results(const ExperimentSummary& summary, const std::string& prefix) {
    const std::string runs_path = prefix + "_runs.csv";
    const std::string summary_path = prefix + "_summary.csv";

    std::ofstream runs = open_out(runs_path);
    runs << "policy,agents,seed,delivered,rate\n";
    for (const CellSummary& cell : summary.cells) {
        for (const EpisodeResult& r : cell.runs) {
            runs << policy_name(cell.policy) << ',' << cell.agents << ',' << r.seed << ','
                 << r.delivered << ',' << format_double(r.rate) << '\n';
        }
    }
    if (!runs.flush()) throw std::runtime_error("write failed: " + runs_path);

    std::ofstream sum = open_out(summary_path);
    sum << "policy,agents,mean_rate,std_rate,n\n";
    for (const CellSummary& cell : summary.cells) {
        sum << policy_name(cell.policy) << ',' << cell.agents << ','
            << format_double(cell.mean_rate) << ',' << format_double(cell.std_rate) << ','
            << cell.n << '\n';
    }
    if (!sum.flush()) throw std::runtime_error("write failed: " + summary_path);
}

std::vector<RunRow> parse_runs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::vector<RunRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty results file: " + path);
    if (line != "policy,agents,seed,delivered,rate")
        throw std::runtime_error("unexpected header in " + path + ": " + line);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 5)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 5 fields");
        RunRow row;
        row.policy = f[0];
        try {
            row.agents = std::stoi(f[1]);
            row.seed = std::stoull(f[2]);
            row.delivered = std::stol(f[3]);
            row.rate = std::stod(f[4]);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ctsim

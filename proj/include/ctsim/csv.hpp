#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctsim/experiment.hpp"

namespace ctsim {

struct RunRow {
    std::string policy;
    int agents = 0;
    std::uint64_t seed = 0;
    long delivered = 0;
    double rate = 0.0;
};

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Writes <prefix>_runs.csv (policy,agents,seed,delivered,rate; one row per
/// episode) and <prefix>_summary.csv (policy,agents,mean_rate,std_rate,n).
/// UTF-8, LF line endings, round-trippable floats.
void emit_results(const ExperimentSummary& summary, const std::string& prefix);

std::vector<RunRow> parse_runs_csv(const std::string& path);

}  // namespace ctsim

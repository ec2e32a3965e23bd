#pragma once

#include <cstdint>
#include <vector>

#include "ctsim/episode.hpp"
#include "ctsim/scenario.hpp"

namespace ctsim {

/// One (policy, agent count) cell of the factorial sweep.
struct CellSummary {
    PolicyKind policy = PolicyKind::Obp;
    int agents = 0;
    double mean_rate = 0.0;
    double std_rate = 0.0;  // sample std; 0 when n == 1
    int n = 0;
    std::vector<EpisodeResult> runs;  // seed order
};

struct ExperimentSummary {
    std::vector<CellSummary> cells;  // policy-major, agent counts in given order
};

/// Full factorial sweep over policies x agent counts x seeds. Episodes are
/// independent and run on up to `threads` workers (0 = hardware
/// concurrency); the CT_SIM_THREADS environment variable caps either
/// choice. Results are identical regardless of the thread count.
ExperimentSummary run_experiment(const ScenarioConfig& base, const std::vector<int>& agent_counts,
                                 const std::vector<std::uint64_t>& seeds,
                                 const std::vector<PolicyKind>& policies, unsigned threads = 0);

}  // namespace ctsim

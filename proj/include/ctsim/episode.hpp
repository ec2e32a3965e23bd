#pragma once

#include <cstdint>
#include <vector>

#include "ctsim/scenario.hpp"

namespace ctsim {

struct EpisodeResult {
    long delivered = 0;
    double rate = 0.0;  // delivered / horizon
    long repartition_count = 0;
    std::uint64_t seed = 0;
    std::vector<long> delivered_series;  // cumulative per tick, when recorded
};

struct EpisodeOptions {
    bool record_series = false;
    bool check_conservation = false;  // verify the audit identity every tick
};

/// Runs one full episode of cfg.horizon ticks under cfg.policy and returns
/// its metrics. Deterministic in (cfg, seed): the seed fixes the scenario,
/// the replenishment draws and all policy randomness.
EpisodeResult run_episode(const ScenarioConfig& cfg, std::uint64_t seed,
                          const EpisodeOptions& opts = {});

}  // namespace ctsim

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctsim/policy.hpp"
#include "ctsim/world.hpp"

namespace ctsim {

struct AgentSpec {
    int count = 4;
    double speed = 5.0;
    int capacity = 10;
};

/// Everything needed to build and run one episode. Defaults mirror the
/// standard benchmark preset: 20 locations in a 100x100 area, capacity 10,
/// horizon 2000.
struct ScenarioConfig {
    int n_locations = 20;  // non-hub locations
    double area = 100.0;   // square side length; the hub sits at the center
    std::array<double, 2> rate_range{0.05, 0.5};
    std::optional<std::vector<double>> rates;  // explicit per-location rates
    AgentSpec agents;
    long horizon = 2000;
    PolicyKind policy = PolicyKind::Obp;
    PolicyParams params;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ScenarioConfig& cfg);

/// Builds locations (hub at the area center, the rest uniform in the
/// square, rates uniform in rate_range unless given explicitly) and agents
/// (all at the hub, empty). Under GR+EO with the reconnaissance flag, one
/// extra capacity-0 agent with the highest id joins the team.
std::pair<std::vector<Location>, std::vector<AgentState>> generate_scenario(
    const ScenarioConfig& cfg, Rng& rng);

/// Reads a JSON config file; every field is optional and falls back to the
/// defaults above.
ScenarioConfig load_config(const std::string& path);

PolicyKind parse_policy(const std::string& name);
std::string policy_name(PolicyKind kind);

}  // namespace ctsim

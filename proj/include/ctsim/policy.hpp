#pragma once

#include <map>
#include <span>
#include <vector>

#include "ctsim/estimation.hpp"
#include "ctsim/partition.hpp"
#include "ctsim/world.hpp"

namespace ctsim {

enum class PolicyKind { Obp, GrEo, Random };

struct PolicyParams {
    double threshold = 0.2;   // repartition trigger on cluster-load deviation
    double prior_rate = 1.0;  // preset rate estimate before any observation
    long cooldown = 20;       // minimum ticks between repartitions (0 = none)
    bool recon_agent = true;  // GR+EO fields a zero-capacity reconnaissance agent
};

struct Decision {
    int agent = 0;
    int destination = kHub;
    double expected_rate = 0.0;  // score of the chosen destination (diagnostic)
};

/// Objects the agent expects to collect when it reaches location j at
/// arrival_t, believing the store: estimated count plus rate accrual over
/// the travel, clamped by free capacity.
double expected_pickup(const AgentState& agent, int j, long now, long arrival_t,
                       const EstimateStore& store);

/// Greedy Rate: pick the destination maximizing delivered objects per tick
/// over the trip that ends at the hub. A full agent heads home; an empty
/// scope sends the agent to the hub as well. Every candidate trip is scored
/// as (load + expected pickup) / (travel there + travel to hub + 1); the +1
/// charges the decision tick and absorbs zero-length travel. Ties go to the
/// lowest location index (the hub, index 0, is always a candidate).
Decision greedy_rate_next(const AgentState& agent, std::span<const int> scope,
                          const EstimateStore& store, long now,
                          const std::vector<Location>& locations);

/// OBP inner policy: Greedy Rate over the agent's own cluster, using only
/// the agent's own estimates.
Decision obp_decide(const WorldState& world, const AgentState& agent, const Partition& partition,
                    const EstimateStore& own_store);

/// GR+EO benchmark: Greedy Rate over all locations with a shared store.
/// Locations reserved by another agent are excluded. The reconnaissance
/// agent (capacity 0) instead targets the location with the stalest
/// observation, unvisited first, ties to the lowest index; it never reserves.
/// `reservations` maps location -> holding agent id.
Decision greo_decide(const WorldState& world, const AgentState& agent,
                     const EstimateStore& shared_store, const std::map<int, int>& reservations);

/// Random benchmark: hub when full, otherwise a uniformly random non-hub
/// location.
Decision random_decide(const WorldState& world, const AgentState& agent, Rng& rng);

}  // namespace ctsim

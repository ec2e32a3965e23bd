#include "ctsim/policy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ctsim {

double expected_pickup(const AgentState& agent, int j, long now, long arrival_t,
                       const EstimateStore& store) {
    const double accrued = store.est_count(j) + store.est_rate(j) * static_cast<double>(arrival_t - now);
    return std::min(accrued, static_cast<double>(agent.free_capacity()));
}

Decision greedy_rate_next(const AgentState& agent, std::span<const int> scope,
                          const EstimateStore& store, long now,
                          const std::vector<Location>& locations) {
    if (!agent.idle()) throw std::logic_error("greedy_rate_next: agent is not idle at a location");
    const Location& here = locations[agent.trip.location];

    const long home = travel_time(agent, here, locations[kHub]);
    const double hub_rate = static_cast<double>(agent.load) / static_cast<double>(home + 1);
    if (agent.load == agent.capacity) return {agent.id, kHub, hub_rate};

    int best = kHub;
    double best_rate = hub_rate;
    for (const int j : scope) {
        const long go = travel_time(agent, here, locations[j]);
        const long back = travel_time(agent, locations[j], locations[kHub]);
        const double gain = expected_pickup(agent, j, now, now + go, store);
        const double rate = (static_cast<double>(agent.load) + gain) / static_cast<double>(go + back + 1);
        if (rate > best_rate || (rate == best_rate && j < best)) {
            best = j;
            best_rate = rate;
        }
    }
    return {agent.id, best, best_rate};
}

Decision obp_decide(const WorldState& world, const AgentState& agent, const Partition& partition,
                    const EstimateStore& own_store) {
    if (!agent.cluster) throw std::logic_error("obp_decide: agent has no cluster assignment");
    std::vector<int> scope;
    for (std::size_t j = 1; j < partition.assign.size(); ++j)
        if (partition.assign[j] == *agent.cluster) scope.push_back(static_cast<int>(j));
    return greedy_rate_next(agent, scope, own_store, world.clock, world.locations);
}

Decision greo_decide(const WorldState& world, const AgentState& agent,
                     const EstimateStore& shared_store, const std::map<int, int>& reservations) {
    const int n = static_cast<int>(world.locations.size());

    if (agent.capacity == 0) {
        // Reconnaissance: refresh the location nobody has looked at for the
        // longest time. Unvisited locations are the stalest of all.
        int best = -1;
        long best_time = std::numeric_limits<long>::max();
        for (int j = 1; j < n; ++j) {
            const long t = shared_store.last_observation_time(j).value_or(-1);
            if (t < best_time) {
                best_time = t;
                best = j;
            }
        }
        return {agent.id, best, 0.0};
    }

    std::vector<int> scope;
    for (int j = 1; j < n; ++j) {
        const auto it = reservations.find(j);
        if (it != reservations.end() && it->second != agent.id) continue;
        scope.push_back(j);
    }
    return greedy_rate_next(agent, scope, shared_store, world.clock, world.locations);
}

Decision random_decide(const WorldState& world, const AgentState& agent, Rng& rng) {
    if (agent.load == agent.capacity) return {agent.id, kHub, 0.0};
    const int n = static_cast<int>(world.locations.size()) - 1;
    return {agent.id, 1 + rng.uniform_int(n), 0.0};
}

}  // namespace ctsim

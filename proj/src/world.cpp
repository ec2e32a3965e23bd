#include "ctsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ctsim {

long travel_time(const AgentState& agent, const Location& from, const Location& to) {
    return static_cast<long>(std::ceil(distance(from.position, to.position) / agent.speed));
}

void replenish(WorldState& state) {
    for (std::size_t j = 1; j < state.locations.size(); ++j) {
        const long drawn = state.rng.poisson(state.locations[j].true_rate);
        state.counts[j] += drawn;
        state.total_replenished += drawn;
    }
}

Observation arrive_pickup(AgentState& agent, int j, WorldState& state) {
    if (j == kHub)
        throw std::logic_error("arrive_pickup: hub arrivals must go through deliver()");
    if (!agent.idle() || agent.trip.location != j)
        throw std::logic_error("arrive_pickup: agent is not at location " + std::to_string(j));

    const long arrival = state.counts[j];
    const long picked = std::min<long>(arrival, agent.free_capacity());
    state.counts[j] -= picked;
    agent.load += static_cast<int>(picked);

    return Observation{agent.id, j, state.clock, arrival, picked, state.counts[j]};
}

void deliver(AgentState& agent, WorldState& state) {
    if (!agent.idle() || agent.trip.location != kHub)
        throw std::logic_error("deliver: agent is not at the hub");
    state.hub_delivered += agent.load;
    agent.load = 0;
}

std::vector<Observation> step(WorldState& state, const std::map<int, int>& decisions) {
    if (state.clock >= state.horizon)
        throw std::logic_error("step: clock is already at the horizon");
    const int n = static_cast<int>(state.locations.size());
    for (const auto& [id, dest] : decisions) {
        if (dest < 0 || dest >= n)
            throw std::invalid_argument("step: decision for agent " + std::to_string(id) +
                                        " names unknown location " + std::to_string(dest));
    }

    replenish(state);

    for (AgentState& a : state.agents) {
        if (a.trip.kind == TripKind::EnRoute && --a.trip.remaining == 0)
            a.trip = Trip::at(a.trip.location);
    }

    std::vector<Observation> observations;
    for (AgentState& a : state.agents) {
        if (!a.idle()) continue;
        if (a.trip.location == kHub)
            deliver(a, state);
        else
            observations.push_back(arrive_pickup(a, a.trip.location, state));
    }

    for (AgentState& a : state.agents) {
        if (!a.idle()) continue;
        const auto it = decisions.find(a.id);
        if (it == decisions.end() || it->second == a.trip.location) continue;
        const long tt = travel_time(a, state.locations[a.trip.location], state.locations[it->second]);
        a.trip = Trip::en_route(it->second, std::max<long>(1, tt));
    }

    ++state.clock;
    return observations;
}

long objects_in_system(const WorldState& state) {
    long total = state.hub_delivered;
    for (const AgentState& a : state.agents) total += a.load;
    for (std::size_t j = 1; j < state.counts.size(); ++j) total += state.counts[j];
    return total;
}

}  // namespace ctsim

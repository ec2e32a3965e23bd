#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ctsim/geometry.hpp"
#include "ctsim/rng.hpp"

namespace ctsim {

/// Index of the transportation hub. Location 0 is always the hub: it is
/// never replenished and agents unload their whole cargo on arrival.
inline constexpr int kHub = 0;

struct Location {
    int index = 0;
    Vec2 position;
    double true_rate = 0.0;  // mean objects replenished per tick; 0 at the hub
};

enum class TripKind { AtLocation, EnRoute };

/// Where an agent is: parked at a location, or en route with a countdown.
/// `location` is the current location when parked, the destination otherwise.
struct Trip {
    TripKind kind = TripKind::AtLocation;
    int location = kHub;
    long remaining = 0;  // ticks until arrival; > 0 while en route

    static Trip at(int loc) { return {TripKind::AtLocation, loc, 0}; }
    static Trip en_route(int dest, long rem) { return {TripKind::EnRoute, dest, rem}; }
};

struct AgentState {
    int id = 0;
    double speed = 1.0;   // distance units per tick
    int capacity = 0;     // 0 only for a reconnaissance agent
    int load = 0;
    Trip trip;
    std::optional<int> cluster;

    int free_capacity() const { return capacity - load; }
    bool idle() const { return trip.kind == TripKind::AtLocation; }
};

/// What an agent learns when it executes a pickup at a location.
struct Observation {
    int agent = 0;
    int location = 0;
    long time = 0;
    long arrival_count = 0;  // objects present on arrival, before pickup
    long picked = 0;
    long remaining = 0;      // objects left after pickup
};

/// Ground-truth simulation state. Self-contained: owns its RNG, so a copy
/// replays identically and independent episodes can run on separate threads.
struct WorldState {
    long clock = 0;
    long horizon = 0;
    std::vector<Location> locations;  // [0] is the hub
    std::vector<long> counts;         // objects waiting per location; counts[0] stays 0
    long hub_delivered = 0;
    long total_replenished = 0;       // audit tally for the conservation identity
    std::vector<AgentState> agents;   // indexed by agent id
    Rng rng;
};

/// Ticks needed to move between two locations: ceil(distance / speed).
long travel_time(const AgentState& agent, const Location& from, const Location& to);

/// Adds an independent Poisson draw of each non-hub location's true rate.
void replenish(WorldState& state);

/// Picks up min(waiting, free capacity) objects at location j and reports
/// what the agent saw. The hub is handled by deliver(), never by this.
Observation arrive_pickup(AgentState& agent, int j, WorldState& state);

/// Transfers the agent's whole load to the hub tally.
void deliver(AgentState& agent, WorldState& state);

/// Advances the world one tick. Order within the tick: replenish; en-route
/// agents move (arrivals become parked); parked agents pick up or deliver,
/// in ascending agent id; parked agents with a decision depart; clock
/// increments. `decisions` maps agent id to destination for agents that were
/// idle when the caller planned the tick. A same-location decision keeps the
/// agent parked so it can re-decide next tick. Any trip to a distinct
/// location costs at least one tick.
std::vector<Observation> step(WorldState& state, const std::map<int, int>& decisions);

/// Left side of the conservation identity: delivered + carried + waiting.
long objects_in_system(const WorldState& state);

}  // namespace ctsim

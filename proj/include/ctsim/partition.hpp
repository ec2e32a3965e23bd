#pragma once

#include <vector>

#include "ctsim/world.hpp"

namespace ctsim {

/// Assignment of every non-hub location to exactly one of k clusters.
/// Empty clusters are allowed (their agent idles at the hub).
struct Partition {
    int k = 0;
    std::vector<int> assign;      // per location index; assign[0] = -1 (hub)
    std::vector<Vec2> centroids;  // one per cluster
    std::vector<double> loads;    // sum of estimated rates over members

    std::vector<int> members(int cluster) const;
};

/// Spatial k-means over the non-hub locations: k-means++ style seeding from
/// rng, then Lloyd's iteration to an assignment fixed point (at most 100
/// rounds). Loads are left at zero; see recompute_loads. Throws if k exceeds
/// the number of non-hub locations.
Partition kmeans_partition(const std::vector<Location>& locations, int k, Rng& rng);

/// Rebuilds per-cluster load sums from a per-location rate vector.
void recompute_loads(Partition& p, const std::vector<double>& rates);

/// Deviation statistic of the cluster loads: population standard deviation
/// divided by mean (coefficient of variation). All-zero loads count as
/// perfectly balanced.
double imbalance(const Partition& p);

/// True iff the partition's imbalance, recomputed against the given rate
/// estimates, strictly exceeds the threshold.
bool should_repartition(const Partition& p, const std::vector<double>& rates, double threshold);

/// Greedy refinement: repeatedly apply the single-location reassignment that
/// most reduces imbalance (ties: smallest increase in distance to centroid,
/// then lowest location index), recomputing centroids and loads after each
/// move. Stops when no move strictly improves, or after 10 * n moves. The
/// result never has higher imbalance than the input.
Partition balance_partition(Partition p, const std::vector<double>& rates,
                            const std::vector<Location>& locations);

/// Matches transportation agents to clusters: in ascending agent id, each
/// agent claims the nearest unclaimed centroid, measured from the agent's
/// current (or, en route, destination) location. Agent count must equal k.
std::vector<int> assign_agents(const Partition& p, const std::vector<AgentState>& agents,
                               const std::vector<Location>& locations);

}  // namespace ctsim

#pragma once

#include <optional>
#include <vector>

#include "ctsim/world.hpp"

namespace ctsim {

/// Owner id of the aggregate store that collects every agent's observations.
inline constexpr int kCentral = -1;

/// A viewer's belief about the locations: estimated waiting count and
/// estimated replenishment rate per location, built from the observations
/// this viewer has seen. An agent's store sees only its own observations;
/// the central store sees everyone's. Stores never talk to each other.
///
/// The rate estimate is the running ratio (total objects inferred
/// replenished) / (time steps covered). Counts start at zero at t = 0, so a
/// first visit at time t covers the whole interval [0, t].
class EstimateStore {
public:
    EstimateStore() = default;
    EstimateStore(int owner, std::size_t n_locations_with_hub, double prior_rate);

    int owner() const { return owner_; }
    double prior_rate() const { return prior_; }
    std::size_t size() const { return cells_.size(); }

    double est_count(int j) const { return cells_[j].est_count; }
    double est_rate(int j) const { return cells_[j].est_rate; }
    double total_replenished(int j) const { return cells_[j].total_replenished; }
    long elapsed(int j) const { return cells_[j].elapsed; }

    /// Time of the most recent incorporated visit, if any.
    std::optional<long> last_observation_time(int j) const;

    /// Accrues the estimated rate into the estimated count of every non-hub
    /// location: what the viewer believes piled up over dt unobserved ticks.
    void propagate(long dt);

    /// Folds one observation in. Repeat visits credit the count difference
    /// over the elapsed interval; a first visit credits everything seen
    /// since t = 0. Throws on evidence older than what is already folded in.
    void incorporate(const Observation& obs);

    /// Rate estimate for location j: the running ratio once any time is
    /// covered, the preset prior before that.
    double rate_estimate(int j) const;

    /// Per-location rate estimates; entry 0 (the hub) is 0.
    std::vector<double> rates() const;

private:
    struct Cell {
        double est_count = 0.0;
        double est_rate = 0.0;
        double total_replenished = 0.0;
        long elapsed = 0;
        bool visited = false;
        long last_time = 0;
        long last_count = 0;
    };

    int owner_ = kCentral;
    double prior_ = 1.0;
    std::vector<Cell> cells_;  // [0] is the hub and stays untouched
};

}  // namespace ctsim

#include "ctsim/estimation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctsim {

EstimateStore::EstimateStore(int owner, std::size_t n_locations_with_hub, double prior_rate)
    : owner_(owner), prior_(prior_rate), cells_(n_locations_with_hub) {
    for (std::size_t j = 1; j < cells_.size(); ++j) cells_[j].est_rate = prior_rate;
}

std::optional<long> EstimateStore::last_observation_time(int j) const {
    if (!cells_[j].visited) return std::nullopt;
    return cells_[j].last_time;
}

void EstimateStore::propagate(long dt) {
    for (std::size_t j = 1; j < cells_.size(); ++j)
        cells_[j].est_count += cells_[j].est_rate * static_cast<double>(dt);
}

void EstimateStore::incorporate(const Observation& obs) {
    if (obs.location <= 0 || obs.location >= static_cast<int>(cells_.size()))
        throw std::invalid_argument("incorporate: bad location " + std::to_string(obs.location));
    Cell& c = cells_[obs.location];
    if (c.visited && obs.time < c.last_time)
        throw std::invalid_argument("incorporate: out-of-order observation at location " +
                                    std::to_string(obs.location));

    if (c.visited) {
        // Arrival below the last remaining count cannot happen in the closed
        // simulator; clamp keeps the tally total if it ever does.
        c.total_replenished += std::max<double>(0.0, static_cast<double>(obs.arrival_count - c.last_count));
        c.elapsed += obs.time - c.last_time;
    } else {
        c.total_replenished += static_cast<double>(obs.arrival_count);
        c.elapsed += obs.time;
    }
    if (c.elapsed > 0) c.est_rate = c.total_replenished / static_cast<double>(c.elapsed);

    c.est_count = static_cast<double>(obs.remaining);
    c.visited = true;
    c.last_time = obs.time;
    c.last_count = obs.remaining;
}

double EstimateStore::rate_estimate(int j) const {
    const Cell& c = cells_[j];
    return c.elapsed > 0 ? c.total_replenished / static_cast<double>(c.elapsed) : prior_;
}

std::vector<double> EstimateStore::rates() const {
    std::vector<double> out(cells_.size(), 0.0);
    for (std::size_t j = 1; j < cells_.size(); ++j) out[j] = rate_estimate(static_cast<int>(j));
    return out;
}

}  // namespace ctsim

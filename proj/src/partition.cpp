#include "ctsim/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctsim {

namespace {

int nearest_centroid(const Vec2& pos, const std::vector<Vec2>& centroids) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = distance(pos, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

// Centroid of each cluster's members; empty clusters keep their old centroid.
void recompute_centroids(Partition& p, const std::vector<Location>& locations) {
    std::vector<Vec2> sums(p.k);
    std::vector<int> sizes(p.k, 0);
    for (std::size_t j = 1; j < p.assign.size(); ++j) {
        const int c = p.assign[j];
        sums[c].x += locations[j].position.x;
        sums[c].y += locations[j].position.y;
        ++sizes[c];
    }
    for (int c = 0; c < p.k; ++c) {
        if (sizes[c] == 0) continue;
        p.centroids[c] = {sums[c].x / sizes[c], sums[c].y / sizes[c]};
    }
}

double cv_of_loads(const std::vector<double>& loads) {
    double mean = 0.0;
    for (double l : loads) mean += l;
    mean /= static_cast<double>(loads.size());
    if (mean <= 0.0) return 0.0;
    double var = 0.0;
    for (double l : loads) var += (l - mean) * (l - mean);
    var /= static_cast<double>(loads.size());
    return std::sqrt(var) / mean;
}

}  // namespace

std::vector<int> Partition::members(int cluster) const {
    std::vector<int> out;
    for (std::size_t j = 1; j < assign.size(); ++j)
        if (assign[j] == cluster) out.push_back(static_cast<int>(j));
    return out;
}

Partition kmeans_partition(const std::vector<Location>& locations, int k, Rng& rng) {
    const int n = static_cast<int>(locations.size()) - 1;
    if (k < 1) throw std::invalid_argument("kmeans_partition: k must be >= 1");
    if (n < 1) throw std::invalid_argument("kmeans_partition: no non-hub locations");
    if (k > n) throw std::invalid_argument("kmeans_partition: k exceeds non-hub location count");

    Partition p;
    p.k = k;
    p.assign.assign(locations.size(), -1);
    p.loads.assign(k, 0.0);

    // k-means++ seeding: first centroid uniform, the rest proportional to
    // squared distance from the nearest chosen centroid.
    p.centroids.push_back(locations[1 + rng.uniform_int(n)].position);
    std::vector<double> d2(locations.size(), 0.0);
    while (static_cast<int>(p.centroids.size()) < k) {
        double total = 0.0;
        for (std::size_t j = 1; j < locations.size(); ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& c : p.centroids)
                best = std::min(best, distance(locations[j].position, c));
            d2[j] = best * best;
            total += d2[j];
        }
        if (total <= 0.0) {
            // All remaining mass sits on the chosen centroids; fall back to
            // a uniform pick.
            p.centroids.push_back(locations[1 + rng.uniform_int(n)].position);
            continue;
        }
        double target = rng.next_double() * total;
        std::size_t pick = locations.size() - 1;
        for (std::size_t j = 1; j < locations.size(); ++j) {
            target -= d2[j];
            if (target <= 0.0) {
                pick = j;
                break;
            }
        }
        p.centroids.push_back(locations[pick].position);
    }

    for (std::size_t j = 1; j < locations.size(); ++j)
        p.assign[j] = nearest_centroid(locations[j].position, p.centroids);

    for (int iter = 0; iter < 100; ++iter) {
        recompute_centroids(p, locations);
        bool changed = false;
        for (std::size_t j = 1; j < locations.size(); ++j) {
            const int c = nearest_centroid(locations[j].position, p.centroids);
            if (c != p.assign[j]) {
                p.assign[j] = c;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return p;
}

void recompute_loads(Partition& p, const std::vector<double>& rates) {
    std::fill(p.loads.begin(), p.loads.end(), 0.0);
    for (std::size_t j = 1; j < p.assign.size(); ++j) p.loads[p.assign[j]] += rates[j];
}

double imbalance(const Partition& p) {
    return cv_of_loads(p.loads);
}

bool should_repartition(const Partition& p, const std::vector<double>& rates, double threshold) {
    std::vector<double> loads(p.k, 0.0);
    for (std::size_t j = 1; j < p.assign.size(); ++j) loads[p.assign[j]] += rates[j];
    return cv_of_loads(loads) > threshold;
}

Partition balance_partition(Partition p, const std::vector<double>& rates,
                            const std::vector<Location>& locations) {
    recompute_loads(p, rates);
    recompute_centroids(p, locations);

    const long n = static_cast<long>(p.assign.size()) - 1;
    double current = imbalance(p);

    for (long move = 0; move < 10 * n; ++move) {
        int best_j = -1;
        int best_c = -1;
        double best_imb = current;
        double best_ddist = std::numeric_limits<double>::infinity();

        std::vector<double> trial = p.loads;
        for (std::size_t j = 1; j < p.assign.size(); ++j) {
            const int from = p.assign[j];
            const double w = rates[j];
            for (int c = 0; c < p.k; ++c) {
                if (c == from) continue;
                trial[from] -= w;
                trial[c] += w;
                const double imb = cv_of_loads(trial);
                trial[from] += w;
                trial[c] -= w;
                if (imb >= current) continue;
                const double ddist = distance(locations[j].position, p.centroids[c]) -
                                     distance(locations[j].position, p.centroids[from]);
                if (imb < best_imb || (imb == best_imb && ddist < best_ddist)) {
                    best_imb = imb;
                    best_ddist = ddist;
                    best_j = static_cast<int>(j);
                    best_c = c;
                }
            }
        }
        if (best_j < 0) break;

        p.loads[p.assign[best_j]] -= rates[best_j];
        p.loads[best_c] += rates[best_j];
        p.assign[best_j] = best_c;
        recompute_centroids(p, locations);
        current = best_imb;
    }
    return p;
}

std::vector<int> assign_agents(const Partition& p, const std::vector<AgentState>& agents,
                               const std::vector<Location>& locations) {
    if (static_cast<int>(agents.size()) != p.k)
        throw std::invalid_argument("assign_agents: agent count must equal k");

    std::vector<bool> claimed(p.k, false);
    std::vector<int> out(agents.size(), -1);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Vec2& pos = locations[agents[i].trip.location].position;
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < p.k; ++c) {
            if (claimed[c]) continue;
            const double d = distance(pos, p.centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        claimed[best] = true;
        out[i] = best;
    }
    return out;
}

}  // namespace ctsim

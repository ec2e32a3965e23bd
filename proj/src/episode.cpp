#include "ctsim/episode.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "ctsim/estimation.hpp"
#include "ctsim/partition.hpp"
#include "ctsim/policy.hpp"

namespace ctsim {

namespace {

// Stream ids carving an episode seed into independent RNGs.
enum Stream : std::uint64_t { kScenarioStream = 0, kWorldStream = 1, kPolicyStream = 2 };

struct ObpState {
    Partition partition;
    std::vector<EstimateStore> agent_stores;
    EstimateStore central;
    long last_partition_tick = 0;
};

void apply_partition(const Partition& p, const std::vector<Location>& locations,
                     std::vector<AgentState>& agents) {
    const std::vector<int> clusters = assign_agents(p, agents, locations);
    for (std::size_t i = 0; i < agents.size(); ++i) agents[i].cluster = clusters[i];
}

}  // namespace

EpisodeResult run_episode(const ScenarioConfig& cfg, std::uint64_t seed,
                          const EpisodeOptions& opts) {
    Rng scenario_rng = Rng::derive(seed, kScenarioStream);
    Rng policy_rng = Rng::derive(seed, kPolicyStream);

    auto [locations, agents] = generate_scenario(cfg, scenario_rng);

    WorldState world;
    world.horizon = cfg.horizon;
    world.locations = std::move(locations);
    world.counts.assign(world.locations.size(), 0);
    world.agents = std::move(agents);
    world.rng = Rng::derive(seed, kWorldStream);

    const std::size_t n_with_hub = world.locations.size();
    const double prior = cfg.params.prior_rate;

    ObpState obp;
    EstimateStore shared;               // GR+EO
    std::map<int, int> reservations;    // GR+EO: location -> holding agent id

    if (cfg.policy == PolicyKind::Obp) {
        const int k = static_cast<int>(world.agents.size());
        obp.partition = kmeans_partition(world.locations, k, policy_rng);
        apply_partition(obp.partition, world.locations, world.agents);
        for (const AgentState& a : world.agents)
            obp.agent_stores.emplace_back(a.id, n_with_hub, prior);
        obp.central = EstimateStore(kCentral, n_with_hub, prior);
    } else if (cfg.policy == PolicyKind::GrEo) {
        shared = EstimateStore(kCentral, n_with_hub, prior);
    }

    EpisodeResult result;
    result.seed = seed;
    if (opts.record_series) result.delivered_series.reserve(cfg.horizon);

    std::map<int, int> decisions;
    while (world.clock < world.horizon) {
        decisions.clear();
        for (const AgentState& a : world.agents) {
            if (!a.idle()) continue;
            Decision d;
            switch (cfg.policy) {
                case PolicyKind::Obp:
                    d = obp_decide(world, a, obp.partition, obp.agent_stores[a.id]);
                    break;
                case PolicyKind::GrEo:
                    d = greo_decide(world, a, shared, reservations);
                    if (a.capacity > 0 && d.destination != kHub)
                        reservations[d.destination] = a.id;
                    break;
                case PolicyKind::Random:
                    d = random_decide(world, a, policy_rng);
                    break;
            }
            decisions[a.id] = d.destination;
        }

        const std::vector<Observation> observations = step(world, decisions);

        if (opts.record_series) result.delivered_series.push_back(world.hub_delivered);
        if (opts.check_conservation && objects_in_system(world) != world.total_replenished)
            throw std::logic_error("conservation violated at tick " + std::to_string(world.clock));

        if (cfg.policy == PolicyKind::Obp) {
            for (EstimateStore& s : obp.agent_stores) s.propagate(1);
            obp.central.propagate(1);
            for (const Observation& o : observations) {
                obp.agent_stores[o.agent].incorporate(o);
                obp.central.incorporate(o);
            }
            const bool cooled =
                world.clock - obp.last_partition_tick >= cfg.params.cooldown;
            if (cooled) {
                const std::vector<double> rates = obp.central.rates();
                if (should_repartition(obp.partition, rates, cfg.params.threshold)) {
                    const int k = static_cast<int>(world.agents.size());
                    Partition fresh = kmeans_partition(world.locations, k, policy_rng);
                    obp.partition = balance_partition(std::move(fresh), rates, world.locations);
                    apply_partition(obp.partition, world.locations, world.agents);
                    obp.last_partition_tick = world.clock;
                    ++result.repartition_count;
                }
            }
        } else if (cfg.policy == PolicyKind::GrEo) {
            shared.propagate(1);
            for (const Observation& o : observations) {
                shared.incorporate(o);
                const auto held = reservations.find(o.location);
                if (held != reservations.end() && held->second == o.agent)
                    reservations.erase(held);
            }
        }
    }

    result.delivered = world.hub_delivered;
    result.rate = static_cast<double>(result.delivered) / static_cast<double>(cfg.horizon);
    return result;
}

}  // namespace ctsim

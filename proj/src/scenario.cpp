#include "ctsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ctsim {

void validate(const ScenarioConfig& cfg) {
    if (cfg.n_locations < 1) throw std::invalid_argument("config: n_locations must be >= 1");
    if (cfg.area <= 0.0) throw std::invalid_argument("config: area must be positive");
    if (cfg.rate_range[0] < 0.0) throw std::invalid_argument("config: rate_range min must be >= 0");
    if (cfg.rate_range[1] < cfg.rate_range[0])
        throw std::invalid_argument("config: rate_range max must be >= min");
    if (cfg.rates && static_cast<int>(cfg.rates->size()) != cfg.n_locations)
        throw std::invalid_argument("config: explicit rate list length must equal n_locations");
    if (cfg.rates && std::any_of(cfg.rates->begin(), cfg.rates->end(), [](double r) { return r < 0.0; }))
        throw std::invalid_argument("config: explicit rates must be >= 0");
    if (cfg.agents.count < 1) throw std::invalid_argument("config: agent count must be >= 1");
    if (cfg.agents.speed <= 0.0) throw std::invalid_argument("config: agent speed must be positive");
    if (cfg.agents.capacity < 1) throw std::invalid_argument("config: agent capacity must be >= 1");
    if (cfg.horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
    if (cfg.params.threshold <= 0.0) throw std::invalid_argument("config: threshold must be positive");
    if (cfg.params.prior_rate < 0.0) throw std::invalid_argument("config: prior rate must be >= 0");
    if (cfg.params.cooldown < 0) throw std::invalid_argument("config: cooldown must be >= 0");
}

std::pair<std::vector<Location>, std::vector<AgentState>> generate_scenario(
    const ScenarioConfig& cfg, Rng& rng) {
    validate(cfg);

    std::vector<Location> locations;
    locations.reserve(cfg.n_locations + 1);
    locations.push_back(Location{0, {cfg.area / 2.0, cfg.area / 2.0}, 0.0});
    for (int j = 1; j <= cfg.n_locations; ++j) {
        Location loc;
        loc.index = j;
        loc.position = {rng.uniform(0.0, cfg.area), rng.uniform(0.0, cfg.area)};
        loc.true_rate = cfg.rates ? (*cfg.rates)[j - 1]
                                  : rng.uniform(cfg.rate_range[0], cfg.rate_range[1]);
        locations.push_back(loc);
    }

    // Under GR+EO the configured count is the whole team: one slot goes to
    // the reconnaissance agent, so the policies compete at equal team size.
    // A team of one keeps its single transporter.
    const bool recon =
        cfg.policy == PolicyKind::GrEo && cfg.params.recon_agent && cfg.agents.count >= 2;
    const int transporters = recon ? cfg.agents.count - 1 : cfg.agents.count;

    std::vector<AgentState> agents;
    agents.reserve(cfg.agents.count);
    for (int i = 0; i < transporters; ++i) {
        AgentState a;
        a.id = i;
        a.speed = cfg.agents.speed;
        a.capacity = cfg.agents.capacity;
        a.trip = Trip::at(kHub);
        agents.push_back(a);
    }
    if (recon) {
        AgentState scout;
        scout.id = transporters;
        scout.speed = cfg.agents.speed;
        scout.capacity = 0;
        scout.trip = Trip::at(kHub);
        agents.push_back(scout);
    }
    return {std::move(locations), std::move(agents)};
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse config file " + path + ": " + e.what());
    }

    ScenarioConfig cfg;
    cfg.n_locations = doc.value("n_locations", cfg.n_locations);
    cfg.area = doc.value("area", cfg.area);
    if (doc.contains("rate_range")) {
        const auto& r = doc.at("rate_range");
        cfg.rate_range = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    if (doc.contains("rates")) cfg.rates = doc.at("rates").get<std::vector<double>>();
    if (doc.contains("agents")) {
        const auto& a = doc.at("agents");
        cfg.agents.count = a.value("count", cfg.agents.count);
        cfg.agents.speed = a.value("speed", cfg.agents.speed);
        cfg.agents.capacity = a.value("capacity", cfg.agents.capacity);
    }
    cfg.horizon = doc.value("horizon", cfg.horizon);
    if (doc.contains("policy")) cfg.policy = parse_policy(doc.at("policy").get<std::string>());
    cfg.params.threshold = doc.value("threshold", cfg.params.threshold);
    cfg.params.prior_rate = doc.value("prior_rate", cfg.params.prior_rate);
    cfg.params.cooldown = doc.value("cooldown", cfg.params.cooldown);
    cfg.params.recon_agent = doc.value("recon", cfg.params.recon_agent);
    cfg.seed = doc.value("seed", cfg.seed);
    return cfg;
}

PolicyKind parse_policy(const std::string& name) {
    std::string s;
    for (char c : name)
        if (c != '+' && c != '_' && c != '-') s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "obp") return PolicyKind::Obp;
    if (s == "greo" || s == "gr") return PolicyKind::GrEo;
    if (s == "random" || s == "r") return PolicyKind::Random;
    throw std::invalid_argument("unknown policy: " + name);
}

std::string policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Obp: return "obp";
        case PolicyKind::GrEo: return "greo";
        case PolicyKind::Random: return "random";
    }
    return "unknown";
}

}  // namespace ctsim

// Command-line front end: single episodes, factorial experiments, and
// Welch comparison of two result files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctsim/csv.hpp"
#include "ctsim/episode.hpp"
#include "ctsim/experiment.hpp"
#include "ctsim/scenario.hpp"
#include "ctsim/stats.hpp"

namespace {

// "1,2,5" and "0..29" (inclusive), in any combination.
std::vector<std::uint64_t> parse_int_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        const auto dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoull(token));
        } else {
            const std::uint64_t lo = std::stoull(token.substr(0, dots));
            const std::uint64_t hi = std::stoull(token.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("descending range: " + token);
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + text);
    return out;
}

std::vector<ctsim::PolicyKind> parse_policy_list(const std::string& text) {
    std::vector<ctsim::PolicyKind> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) out.push_back(ctsim::parse_policy(token));
    }
    if (out.empty()) throw std::invalid_argument("empty policy list: " + text);
    return out;
}

std::vector<double> select_rates(const std::vector<ctsim::RunRow>& rows,
                                 const std::optional<std::string>& policy,
                                 const std::optional<int>& agents) {
    std::vector<double> rates;
    for (const ctsim::RunRow& r : rows) {
        if (policy && r.policy != *policy) continue;
        if (agents && r.agents != *agents) continue;
        rates.push_back(r.rate);
    }
    return rates;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous transportation simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string policy_name_arg;
    std::string agents_arg;
    std::string seeds_arg;
    long horizon_arg = -1;

    // --- run ---
    CLI::App* run = app.add_subcommand("run", "Run a single episode and print its metrics");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--policy", policy_name_arg, "obp | greo | random");
    int run_agents = -1;
    run->add_option("--agents", run_agents, "Number of transportation agents");
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    run->add_option("--seed", run_seed, "Episode seed")->each([&](const std::string&) {
        run_seed_set = true;
    });
    run->add_option("--horizon", horizon_arg, "Episode length in ticks");

    // --- experiment ---
    CLI::App* exp = app.add_subcommand("experiment", "Factorial sweep writing two CSV files");
    exp->add_option("--config", config_path, "JSON config file");
    std::string exp_policies = "obp,greo,random";
    exp->add_option("--policy", exp_policies, "Comma-separated policies (default all three)");
    exp->add_option("--agents", agents_arg, "Agent counts, e.g. 1..8 or 4,6,8 (default 1..8)");
    exp->add_option("--seeds", seeds_arg, "Seeds, e.g. 0..29 (default 0..29)");
    exp->add_option("--horizon", horizon_arg, "Episode length in ticks");
    std::string out_prefix = "results";
    exp->add_option("--out", out_prefix, "Output prefix for <prefix>_runs.csv and <prefix>_summary.csv");
    unsigned threads = 0;
    exp->add_option("--threads", threads, "Worker threads (0 = hardware, CT_SIM_THREADS caps)");

    // --- compare ---
    CLI::App* cmp = app.add_subcommand("compare", "Welch t-test between two runs CSV files");
    std::string csv_a, csv_b;
    cmp->add_option("csv_a", csv_a, "First runs CSV")->required();
    cmp->add_option("csv_b", csv_b, "Second runs CSV")->required();
    std::string a_policy, b_policy;
    int a_agents = -1, b_agents = -1;
    cmp->add_option("--a-policy", a_policy, "Restrict first sample to this policy");
    cmp->add_option("--b-policy", b_policy, "Restrict second sample to this policy");
    cmp->add_option("--a-agents", a_agents, "Restrict first sample to this agent count");
    cmp->add_option("--b-agents", b_agents, "Restrict second sample to this agent count");

    CLI11_PARSE(app, argc, argv);

    try {
        ctsim::ScenarioConfig cfg;
        if (!config_path.empty()) cfg = ctsim::load_config(config_path);
        if (!policy_name_arg.empty()) cfg.policy = ctsim::parse_policy(policy_name_arg);
        if (horizon_arg > 0) cfg.horizon = horizon_arg;

        if (*run) {
            if (run_agents > 0) cfg.agents.count = run_agents;
            const std::uint64_t seed = run_seed_set ? run_seed : cfg.seed;
            const ctsim::EpisodeResult r = ctsim::run_episode(cfg, seed);
            std::cout << "policy: " << ctsim::policy_name(cfg.policy) << "\n"
                      << "agents: " << cfg.agents.count << "\n"
                      << "seed: " << r.seed << "\n"
                      << "delivered: " << r.delivered << "\n"
                      << "rate: " << ctsim::format_double(r.rate) << "\n"
                      << "repartitions: " << r.repartition_count << "\n";
        } else if (*exp) {
            const std::vector<ctsim::PolicyKind> policies = parse_policy_list(exp_policies);
            std::vector<int> counts;
            for (const std::uint64_t v : parse_int_list(agents_arg.empty() ? "1..8" : agents_arg))
                counts.push_back(static_cast<int>(v));
            const std::vector<std::uint64_t> seeds =
                parse_int_list(seeds_arg.empty() ? "0..29" : seeds_arg);

            const ctsim::ExperimentSummary summary =
                ctsim::run_experiment(cfg, counts, seeds, policies, threads);
            ctsim::emit_results(summary, out_prefix);

            std::cout << "policy,agents,mean_rate,std_rate,n\n";
            for (const ctsim::CellSummary& cell : summary.cells) {
                std::cout << ctsim::policy_name(cell.policy) << ',' << cell.agents << ','
                          << ctsim::format_double(cell.mean_rate) << ','
                          << ctsim::format_double(cell.std_rate) << ',' << cell.n << "\n";
            }
            std::cout << "wrote " << out_prefix << "_runs.csv and " << out_prefix
                      << "_summary.csv\n";
        } else if (*cmp) {
            const auto rows_a = ctsim::parse_runs_csv(csv_a);
            const auto rows_b = ctsim::parse_runs_csv(csv_b);
            const auto sel_a = select_rates(
                rows_a, a_policy.empty() ? std::nullopt : std::optional<std::string>(a_policy),
                a_agents < 0 ? std::nullopt : std::optional<int>(a_agents));
            const auto sel_b = select_rates(
                rows_b, b_policy.empty() ? std::nullopt : std::optional<std::string>(b_policy),
                b_agents < 0 ? std::nullopt : std::optional<int>(b_agents));
            const ctsim::WelchResult w = ctsim::welch_t_test(sel_a, sel_b);
            std::cout << "n_a: " << sel_a.size() << "\nn_b: " << sel_b.size() << "\n"
                      << "t: " << ctsim::format_double(w.t) << "\n"
                      << "df: " << ctsim::format_double(w.df) << "\n"
                      << "p: " << ctsim::format_double(w.p) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

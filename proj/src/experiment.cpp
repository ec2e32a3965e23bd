#include "ctsim/experiment.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ctsim/stats.hpp"

namespace ctsim {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CT_SIM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::min<unsigned>(n, static_cast<unsigned>(jobs));
}

}  // namespace

ExperimentSummary run_experiment(const ScenarioConfig& base, const std::vector<int>& agent_counts,
                                 const std::vector<std::uint64_t>& seeds,
                                 const std::vector<PolicyKind>& policies, unsigned threads) {
    if (agent_counts.empty() || seeds.empty() || policies.empty())
        throw std::invalid_argument("run_experiment: agent counts, seeds and policies must be non-empty");

    ExperimentSummary summary;
    for (const PolicyKind policy : policies) {
        for (const int count : agent_counts) {
            CellSummary cell;
            cell.policy = policy;
            cell.agents = count;
            cell.n = static_cast<int>(seeds.size());
            cell.runs.resize(seeds.size());
            summary.cells.push_back(std::move(cell));
        }
    }

    struct Job {
        std::size_t cell;
        std::size_t slot;
    };
    std::vector<Job> jobs;
    jobs.reserve(summary.cells.size() * seeds.size());
    for (std::size_t c = 0; c < summary.cells.size(); ++c)
        for (std::size_t s = 0; s < seeds.size(); ++s) jobs.push_back({c, s});

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job job = jobs[i];
            CellSummary& cell = summary.cells[job.cell];
            try {
                ScenarioConfig cfg = base;
                cfg.policy = cell.policy;
                cfg.agents.count = cell.agents;
                cfg.seed = seeds[job.slot];
                cell.runs[job.slot] = run_episode(cfg, seeds[job.slot]);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const unsigned n_threads = resolve_threads(threads, jobs.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (CellSummary& cell : summary.cells) {
        std::vector<double> rates;
        rates.reserve(cell.runs.size());
        for (const EpisodeResult& r : cell.runs) rates.push_back(r.rate);
        cell.mean_rate = mean(rates);
        cell.std_rate = sample_std(rates);
    }
    return summary;
}

}  // namespace ctsim

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctsim {

/// Seedable pseudo-random source. All randomness in the simulator flows
/// through this class so that an episode is fully determined by its seed.
class Rng {
public:
    Rng() : engine_(0) {}
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derives an independent stream from (seed, stream id). Used to keep
    /// scenario generation, replenishment draws and policy randomness on
    /// separate streams of the same episode seed.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1. Unbiased.
    int uniform_int(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return static_cast<int>(r % bound);
        }
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Poisson draw by inversion (Knuth's product method). Means above 30
    /// are split into chunks, which is exact by Poisson additivity and keeps
    /// the running product away from underflow.
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        long total = 0;
        while (mean > 30.0) {
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    static std::uint64_t splitmix64(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    long poisson_small(double mean) {
        const double limit = std::exp(-mean);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 engine_;
};

}  // namespace ctsim

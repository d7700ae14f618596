#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace egolink {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent substream seed from (seed, tag). Used to give each
// degree class / synthetic ego its own stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0x2545f4914f6cdd1dULL * (tag + 1));
    splitmix64(s);
    return splitmix64(s);
}

// mt19937_64 output is pinned by the standard; the distribution transforms
// below are hand-mapped so streams stay byte-stable across stdlib versions
// (std::*_distribution and std::shuffle are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 significant bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller; second variate cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    // Knuth multiplication method; adequate for the event rates used here.
    std::int64_t poisson(double lambda) {
        std::int64_t k = 0;
        double sum = 0.0;
        while (true) {
            double u;
            do {
                u = uniform01();
            } while (u <= 0.0);
            sum += -std::log(u);
            if (sum >= lambda) return k;
            ++k;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t n = v.size(); n > 1; --n) {
            const std::size_t k = static_cast<std::size_t>(uniform_below(n));
            std::swap(v[n - 1], v[k]);
        }
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace egolink

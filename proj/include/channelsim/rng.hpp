#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace channelsim {

// splitmix64 finalizer, used for seed mixing.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and a tag string.
// Streams with distinct tags never share draws, which is what keeps world
// randomness (leads, rewards, delays) decoupled from policy randomness.
inline uint64_t derive_seed(uint64_t master, std::string_view tag) {
    uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return mix64(master ^ mix64(h));
}

// Deterministic random stream. All stochastic sampling in the simulator goes
// through this class so that results depend only on seeds, not on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n), n > 0. Lemire multiply-shift with rejection.
    uint64_t uniform_below(uint64_t n) {
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            const uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_below(static_cast<uint64_t>(hi) - lo + 1));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; no cached spare so the stream state is
    // a pure function of the number of calls.
    double normal() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

private:
    std::mt19937_64 gen_;
};

inline Rng derive_stream(uint64_t master, std::string_view tag) {
    return Rng(derive_seed(master, tag));
}

}  // namespace channelsim

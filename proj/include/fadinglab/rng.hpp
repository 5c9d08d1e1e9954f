#pragma once

// Deterministic, splittable random streams. Stream states are derived from
// (seed, stream index) through the SplitMix64 finalizer, then drive a
// xoshiro256++ core, so parallel batch generation reproduces exactly
// regardless of how draws are partitioned across workers.

#include <cstdint>

namespace fadinglab::rng {

// SplitMix64 finalizer (Steele/Lea/Vigna).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna).
class Xoshiro256pp {
public:
    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed;
        (void)splitmix64(sm);
        sm ^= 0xA3EC647659359ACDULL * (stream + 1);
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// One reproducible stream of variates.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }
    // uniform on (0, 1]
    double uniform_pos() {
        return (static_cast<double>(gen_.next() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal();                           // standard normal, Box-Muller
    double gamma(double shape, double rate);   // Marsaglia-Tsang
    long poisson(double mean);                 // inversion / PTRS

private:
    Xoshiro256pp gen_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

} // namespace fadinglab::rng

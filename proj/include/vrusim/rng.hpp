#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Deterministic random number generation. The simulator owns its generator and
// distribution code instead of using std::<random> because results must be
// reproducible bit-for-bit for a given (config, seed), including the golden
// files pinned in the repository; the standard distributions are not
// bit-specified across standard-library implementations. The generator is
// xoshiro256++ seeded through splitmix64, both fully specified algorithms.

namespace vrusim {

// One splitmix64 step; advances `state` and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a child seed for an independent stream. Used for the seed hierarchy
// master -> per-replication -> per-subsystem; the architecture flag never
// enters the derivation, which is what makes paired common-random-number runs
// possible.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id) {
    std::uint64_t s = base;
    (void)splitmix64(s);
    s ^= (stream_id + 1) * 0xd1342543de82ef95ULL;
    return splitmix64(s);
}

class RngStream {
  public:
    RngStream() : RngStream(0) {}

    explicit RngStream(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    // Stream `stream_id` of the family rooted at `base`.
    static RngStream substream(std::uint64_t base, std::uint64_t stream_id) {
        return RngStream(derive_seed(base, stream_id));
    }

    std::uint64_t next_u64() {
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

    // Uniform double in [0, 1), 53 bits of resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], inclusive and unbiased (Lemire rejection).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * span;
        auto low = static_cast<std::uint64_t>(m);
        if (low < span) {
            const std::uint64_t threshold = (0 - span) % span;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * span;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return lo + static_cast<std::int64_t>(m >> 64);
    }

    // Normal(mean, stddev) via Box-Muller. Always consumes exactly two
    // uniforms (no cached second value) so stream consumption is predictable.
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Exponential with the given mean, by inversion; consumes one uniform.
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace vrusim

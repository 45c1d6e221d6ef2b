#pragma once

#include <cstdint>

namespace pssk {

// Splittable counter-based generator. Every draw is a pure function of
// (key, counter), so streams derived via split() are independent of how many
// values the parent has produced. Output is identical on every platform,
// which keeps seeded experiments byte-reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed) ^ mix(stream + 0x6A09E667F3BCC909ULL))) {}

    // Derives an independent substream; the parent state is unaffected.
    Rng split(std::uint64_t stream) const { return Rng(key_, stream + 1); }

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n); n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        // 128-bit multiply-shift keeps the bias below 2^-64.
        unsigned __int128 wide =
            static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pssk

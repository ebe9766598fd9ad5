#pragma once

#include <cstdint>

namespace coxstat {

namespace detail {

/// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's splitmix64.c). A bijective
/// mix of the 64-bit state, used here in counter mode.
inline std::uint64_t splitmix64_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Counter-based splittable generator: output k of stream (seed, stream) is
/// mix(base + k * golden), where base mixes seed and stream. Identical
/// (seed, stream) pairs give identical sequences on every platform, and
/// distinct streams can be consumed independently and in parallel.
class SeededRng {
  public:
    SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream),
          base_(detail::splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL) ^
                detail::splitmix64_mix(stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL)),
          counter_(0) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// One 64-bit key identifying the (seed, stream) pair, for deriving a
    /// family of sub-streams (batch chunking).
    std::uint64_t derived_batch_seed() const { return detail::splitmix64_mix(base_); }

    std::uint64_t next_u64() {
        return detail::splitmix64_mix(base_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform in [0, n), exactly unbiased (multiply-shift with rejection).
    std::uint64_t next_below(std::uint64_t n) {
        using u128 = unsigned __int128;
        std::uint64_t x = next_u64();
        u128 m = static_cast<u128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<u128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bool() { return next_u64() >> 63; }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t base_;
    std::uint64_t counter_;
};

} // namespace coxstat

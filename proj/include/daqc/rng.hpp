#pragma once

// Deterministic random numbers with an output sequence that is pinned down
// here, independent of the standard library implementation.
//
// Generator: xoshiro256** 1.0 (Blackman & Vigna), state expanded from a
// 64-bit seed with splitmix64 as the authors recommend. The standard library
// is avoided deliberately: std::mt19937_64 itself is portable, but the
// std::uniform_*_distribution adaptors are not specified bit-for-bit, so two
// toolchains can produce different datasets from the same seed.
//
// Derived draws, all defined explicitly:
//   next_u64()          raw 64-bit output
//   next_below(n)       unbiased integer in [0, n) via Lemire's multiply-shift
//                       with rejection of the biased low band
//   next_int(lo, hi)    lo + next_below(hi - lo + 1), inclusive bounds
//   next_double()       (next_u64() >> 11) * 2^-53, uniform in [0, 1)
//   next_real(a, b)     a + (b - a) * next_double()
//
// Seed derivation for datasets is a documented chain: every level mixes the
// parent seed with an integer tag through splitmix64, so any cell or instance
// can be regenerated in isolation.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace daqc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Mix an ordered list of tags into a parent seed: a left fold of
// s <- splitmix64(s ^ t * 0x9e3779b97f4a7c15). derive_seed(s, {a, b}) equals
// derive_seed(derive_seed(s, {a}), {b}), so any node of the seed tree
// (dataset -> cell -> instance, or tuner -> trial) regenerates independently.
inline std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = parent;
    for (std::uint64_t t : tags) {
        std::uint64_t mixed = s ^ (t * 0x9e3779b97f4a7c15ULL);
        s = splitmix64(mixed);
    }
    return s;
}

class Xoshiro256StarStar {
  public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Lemire 2019, "Fast Random Integer Generation in an Interval": take the
    // high 64 bits of u64 * n, rejecting draws whose low half falls in the
    // 2^64 mod n band so every value in [0, n) is exactly equally likely.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below: empty range");
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    long long next_int(long long lo, long long hi) {
        if (lo > hi) throw std::invalid_argument("next_int: lo > hi");
        return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_real(double a, double b) { return a + (b - a) * next_double(); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace daqc

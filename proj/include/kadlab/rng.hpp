#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

namespace kadlab {

// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// A named random stream. Streams are derived from a master seed by mixing in
// a (domain, index) pair, so adding trials or reordering work never shifts
// the values another stream sees.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    static RngStream derive(std::uint64_t master, std::uint64_t domain, std::uint64_t index) {
        std::uint64_t s = mix64(master ^ mix64(domain ^ 0xA0761D6478BD642Full));
        s = mix64(s ^ mix64(index ^ 0xE7037ED1A0B428DBull));
        return RngStream(s);
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Masked rejection, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

private:
    std::mt19937_64 eng_;
};

// m distinct values from {0,...,s-1}, sorted ascending. Floyd's algorithm:
// O(m) expected draws regardless of s.
inline std::vector<std::uint64_t> sample_distinct(RngStream& rng, std::uint64_t s, std::uint64_t m) {
    if (m > s) m = s;
    std::vector<std::uint64_t> out;
    out.reserve(m);
    if (m == s) {
        out.resize(s);
        std::iota(out.begin(), out.end(), 0ull);
        return out;
    }
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t j = s - m; j < s; ++j) {
        std::uint64_t v = rng.below(j + 1);
        std::uint64_t pick = seen.insert(v).second ? v : j;
        if (pick != v) seen.insert(pick);
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Fixed domain tags for stream derivation.
namespace stream_domain {
inline constexpr std::uint64_t ids_per_trial = 1;
inline constexpr std::uint64_t ids_once = 2;
inline constexpr std::uint64_t trial = 3;
inline constexpr std::uint64_t targets = 4;
inline constexpr std::uint64_t pairs = 5;
inline constexpr std::uint64_t pilot = 6;
inline constexpr std::uint64_t walk_b = 7;
}  // namespace stream_domain

}  // namespace kadlab

#pragma once

#include <cstdint>
#include <limits>

namespace ffl {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: the i-th draw depends only on (seed, i).
inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t i) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~i));
}

// Sequential splitmix generator; one per sample keeps results independent of scheduling.
struct SplitMix64 {
    using result_type = std::uint64_t;
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace ffl

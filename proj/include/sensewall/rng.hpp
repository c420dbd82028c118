#pragma once

#include <cstdint>
#include <cmath>
#include <utility>

namespace sensewall {

// SplitMix64, used only to expand seeds into full generator states.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman/Vigna). The draw sequence is pinned by this file,
// not by the standard library, so results are reproducible across builds.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
    }

    // Stream for a given (seed, stream index) pair; distinct indices give
    // statistically independent sequences.
    static Xoshiro256pp for_stream(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm(seed);
        const std::uint64_t base = sm.next();
        return Xoshiro256pp(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

    result_type operator()() {
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

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Uniform double in [0, 1) with 53 random bits.
template <class Urbg>
double uniform01(Urbg& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method; returns a pair of independent standard normals.
template <class Urbg>
std::pair<double, double> normal_pair(Urbg& rng) {
    double u, v, s;
    do {
        u = 2.0 * uniform01(rng) - 1.0;
        v = 2.0 * uniform01(rng) - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    return {u * f, v * f};
}

}  // namespace sensewall

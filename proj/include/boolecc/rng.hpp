#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace boolecc {

// splitmix64 step; also the mixing primitive for seed derivation and the
// keyed point-membership predicate used by corrupted oracles.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// Keyed hash of a bit vector (as words). Drives pseudorandom error sets:
// a point is corrupted iff point_hash(key, words) < floor(delta * 2^64).
inline std::uint64_t point_hash(std::uint64_t key, std::span<const std::uint64_t> words) {
    std::uint64_t h = key ^ 0x6a09e667f3bcc909ULL;
    for (std::uint64_t w : words) h = mix64(h, w);
    std::uint64_t s = h;
    return splitmix64(s);
}

/// Deterministic PRNG (xoshiro256**), seeded via a splitmix64 chain.
///
/// Seed discipline: every consumer derives a fresh stream from the master
/// seed and a list of 64-bit labels, e.g. derive(seed, {SCENARIO_TAG, trial,
/// stage}). Derivation depends only on (seed, labels), never on drawing
/// order, so trials and stages are reproducible and reorderable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& si : s_) si = splitmix64(sm);
    }

    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
        std::uint64_t h = seed;
        for (std::uint64_t l : labels) h = mix64(h, l);
        return Rng(h);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
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

    // Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool bit() { return next() >> 63; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t s_[4];
};

// Stable tags for substream labeling (documented in the README).
namespace seedtag {
inline constexpr std::uint64_t oracle      = 0x6f7261636c65ULL;
inline constexpr std::uint64_t gadget      = 0x676164676574ULL;
inline constexpr std::uint64_t reduction   = 0x726564756365ULL;
inline constexpr std::uint64_t subcube     = 0x73756263756265ULL;
inline constexpr std::uint64_t smallerr    = 0x736d616c6cULL;
inline constexpr std::uint64_t trial       = 0x747269616cULL;
inline constexpr std::uint64_t level       = 0x6c6576656cULL;
inline constexpr std::uint64_t advice      = 0x616476696365ULL;
inline constexpr std::uint64_t sigma       = 0x7369676d61ULL;
inline constexpr std::uint64_t truth       = 0x7472757468ULL;
inline constexpr std::uint64_t point       = 0x706f696e74ULL;
inline constexpr std::uint64_t scenario    = 0x7363656eULL;
}  // namespace seedtag

}  // namespace boolecc

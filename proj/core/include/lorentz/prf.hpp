#pragma once

#include <cstdint>

namespace lorentz {

// Stateless counter-based randomness. Every variate in the project is a pure
// function of (seed, coordinates, stream tag), so environments are lazily
// evaluable over unbounded domains, bit-identical in any query order and on
// any thread.

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// Stream tags keep the per-purpose variate families independent: xoring a
// distinct tag into the hashed key separates the streams. Constants are hex
// digits of pi.
inline constexpr std::uint64_t kStreamMirrorPresence = 0x243f6a8885a308d3ull;
inline constexpr std::uint64_t kStreamMirrorOrientation = 0x13198a2e03707344ull;
inline constexpr std::uint64_t kStreamStreetHorizontal = 0xa4093822299f31d0ull;
inline constexpr std::uint64_t kStreamStreetVertical = 0x082efa98ec4e6c89ull;
inline constexpr std::uint64_t kStreamTrialSeed = 0x452821e638d01377ull;

/// 64-bit word for a (seed, vertex, stream) triple.
constexpr std::uint64_t vertex_word(std::uint64_t seed, std::int64_t x, std::int64_t y,
                                    std::uint64_t stream) {
    return mix64(seed ^ mix64(static_cast<std::uint64_t>(x)) ^
                 rotl64(mix64(static_cast<std::uint64_t>(y)), 32) ^ stream);
}

/// 64-bit word for a (seed, scalar index, stream) triple; used for street
/// orientations and per-trial seeds.
constexpr std::uint64_t index_word(std::uint64_t seed, std::int64_t index,
                                   std::uint64_t stream) {
    return mix64(seed ^ mix64(static_cast<std::uint64_t>(index)) ^ stream);
}

/// Top 53 bits scaled into [0, 1).
constexpr double to_unit(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

constexpr double vertex_u01(std::uint64_t seed, std::int64_t x, std::int64_t y,
                            std::uint64_t stream) {
    return to_unit(vertex_word(seed, x, y, stream));
}

constexpr double index_u01(std::uint64_t seed, std::int64_t index, std::uint64_t stream) {
    return to_unit(index_word(seed, index, stream));
}

/// Seed for the i-th Monte Carlo trial under a master seed.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed ^ mix64(trial_index) ^ kStreamTrialSeed);
}

}  // namespace lorentz

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hdhash {

/// Deterministic pseudorandom source.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// implements bounded sampling itself so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be non-zero.
    std::uint64_t below(std::uint64_t bound);

    /// `count` distinct values from [0, total), in draw order.
    ///
    /// When count <= total / 2 the values are drawn by rejection, so the result
    /// for a smaller count is a prefix of the result for a larger count under
    /// the same seed.
    std::vector<std::uint64_t> sample_distinct(std::uint64_t total, std::uint64_t count);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent sub-seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) noexcept {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace hdhash

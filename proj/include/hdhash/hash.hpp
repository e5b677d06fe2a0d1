#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace hdhash {

/// Seeded 64-bit hash (XXH64). Output is identical to the reference xxHash
/// implementation for the same bytes and seed.
std::uint64_t hash64(std::span<const std::uint8_t> payload, std::uint64_t seed);

inline std::uint64_t hash64(std::string_view payload, std::uint64_t seed) {
    return hash64(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(payload.data()),
                                                payload.size()),
                  seed);
}

} // namespace hdhash

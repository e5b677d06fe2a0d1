#pragma once

#include "hdhash/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hdhash {

class HashTable;

/// Bit-addressable view over a table's stored per-server state.
///
/// Segments are concatenated in order; bit i of a segment is bit i % 8 of its
/// byte i / 8 in little-endian order. The view aliases live table memory and is
/// invalidated by any join or leave on the owning table.
class CorruptionSurface {
public:
    /// Words holding `bits` meaningful bits (trailing padding excluded).
    void add_words(std::span<std::uint64_t> words, std::size_t bits);
    void add_bytes(std::span<char> bytes);

    std::size_t total_bits() const noexcept { return total_bits_; }

    bool bit(std::size_t pos) const;
    void flip(std::size_t pos);

    /// Each segment packed to ceil(bits/8) little-endian bytes, concatenated.
    std::vector<std::uint8_t> serialize() const;

private:
    struct Segment {
        std::span<std::uint64_t> words;
        std::span<char> bytes;
        std::size_t bits = 0;
        std::size_t offset = 0;
    };

    const Segment& locate(std::size_t pos) const;

    std::vector<Segment> segments_;
    std::size_t total_bits_ = 0;
};

/// A memory-error event description.
///
/// burst_length == 1: total_flips independent single-bit upsets.
/// burst_length > 1: one multi-cell upset of burst_length contiguous bits;
/// total_flips must equal burst_length.
struct NoiseSpec {
    std::size_t total_flips = 0;
    std::size_t burst_length = 1;
    std::uint64_t seed = 0;
};

/// Flips bits of the surface according to `spec`, drawing positions from
/// `rng`. Returns the flipped positions.
///
/// Independent flips are drawn by rejection, so for a fixed rng seed the
/// positions for a smaller flip count are a prefix of those for a larger one.
std::vector<std::size_t> inject(CorruptionSurface& surface, const NoiseSpec& spec, Rng& rng);

/// Same as above with an Rng seeded from spec.seed.
std::vector<std::size_t> inject(CorruptionSurface& surface, const NoiseSpec& spec);

/// Deep copy of a table's state, unaffected by later corruption of the original.
std::unique_ptr<HashTable> snapshot(const HashTable& table);

} // namespace hdhash

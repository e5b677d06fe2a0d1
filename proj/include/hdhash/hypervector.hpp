#pragma once

#include "hdhash/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hdhash {

inline constexpr std::size_t kDefaultDimension = 10000;

/// Packed binary hypervector of dimension d.
///
/// Bit i lives in word i / 64 at position i % 64. Padding bits beyond d in the
/// last word are always zero.
class Hypervector {
public:
    /// All-zero vector. Throws std::invalid_argument when dim == 0.
    explicit Hypervector(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    bool bit(std::size_t i) const;
    void set_bit(std::size_t i, bool value);
    void flip_bit(std::size_t i);

    std::size_t popcount() const noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    /// Raw word access for in-place corruption. Callers must keep padding zero.
    std::span<std::uint64_t> mutable_words() noexcept { return words_; }

    /// Little-endian length-prefixed layout: u32 d, then ceil(d/8) bytes.
    std::vector<std::uint8_t> serialize() const;
    static Hypervector deserialize(std::span<const std::uint8_t> bytes);

    friend bool operator==(const Hypervector&, const Hypervector&) = default;

private:
    std::size_t dim_;
    std::vector<std::uint64_t> words_;
};

Hypervector random_hypervector(std::size_t dim, Rng& rng);

/// Elementwise XOR.
Hypervector bind(const Hypervector& a, const Hypervector& b);

std::size_t hamming(const Hypervector& a, const Hypervector& b);

/// 1 - 2 * hamming / d, the cosine similarity of the bipolar form.
double similarity(const Hypervector& a, const Hypervector& b);

/// Copy of v with `count` distinct uniformly chosen positions inverted.
Hypervector flip_random_bits(const Hypervector& v, std::size_t count, Rng& rng);

/// Number of bytes Hypervector::serialize produces for a given dimension.
constexpr std::size_t serialized_size(std::size_t dim) noexcept { return 4 + (dim + 7) / 8; }

} // namespace hdhash

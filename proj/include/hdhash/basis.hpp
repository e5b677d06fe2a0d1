#pragma once

#include "hdhash/hypervector.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hdhash {

enum class BasisKind : std::uint8_t { random = 0, level = 1, circular = 2 };

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view name);

/// An ordered set of basis hypervectors sharing one dimension.
///
/// Indices are 0-based in code; vectors[0] is the first element of the set.
struct BasisSet {
    BasisKind kind;
    std::size_t dim;
    std::uint64_t seed;
    std::vector<Hypervector> vectors;

    std::size_t size() const noexcept { return vectors.size(); }
    const Hypervector& operator[](std::size_t i) const { return vectors.at(i); }

    /// Header (u8 kind, u32 n, u32 d, u64 seed, little-endian) followed by each
    /// vector's Hypervector::serialize layout.
    std::vector<std::uint8_t> serialize() const;
    static BasisSet deserialize(std::span<const std::uint8_t> bytes);
};

/// n independent random hypervectors.
BasisSet generate_random_set(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Level set: each successive vector flips floor(d / (2(n-1))) bits that no
/// earlier step has touched, so the last vector is quasi-orthogonal to the
/// first. Requires n >= 2 and d >= 2(n-1).
BasisSet generate_level_set(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Circular set for even n.
///
/// n/2 transformation vectors t_1..t_{n/2}, each flipping floor(d/n) positions
/// disjoint from every other t, are applied forward to produce c_1..c_{n/2+1};
/// the first n/2 - 1 are then applied again in FIFO order to walk back towards
/// c_1. The result satisfies hamming(c_i, c_j) = floor(d/n) * circular
/// distance(i, j) exactly. Requires n >= 2, n even, d >= n.
BasisSet generate_circular_set(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Circular set of odd cardinality: builds a 2n set and keeps indices
/// 0, 2, 4, ... (c_1, c_3, c_5, ... in 1-based terms). Even n is forwarded to
/// generate_circular_set.
BasisSet generate_circular_set_odd(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Picks the even or odd circular routine.
BasisSet generate_circular(std::size_t n, std::size_t dim, std::uint64_t seed);

BasisSet generate_set(BasisKind kind, std::size_t n, std::size_t dim, std::uint64_t seed);

/// Pairwise similarity matrix of a basis set.
class SimilarityProfile {
public:
    explicit SimilarityProfile(const BasisSet& set);

    std::size_t size() const noexcept { return n_; }
    double at(std::size_t i, std::size_t j) const { return values_.at(i * n_ + j); }

private:
    std::size_t n_;
    std::vector<double> values_;
};

inline SimilarityProfile similarity_profile(const BasisSet& set) { return SimilarityProfile(set); }

} // namespace hdhash

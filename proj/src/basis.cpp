#include "hdhash/basis.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace hdhash {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok)
        throw std::invalid_argument(message);
}

/// `steps` transformation vectors with `per_step` flipped positions each; no
/// position is used by more than one transformation.
std::vector<Hypervector> disjoint_transformations(std::size_t steps, std::size_t per_step,
                                                  std::size_t dim, Rng& rng) {
    const std::size_t used = steps * per_step;
    std::vector<std::uint32_t> positions(dim);
    std::iota(positions.begin(), positions.end(), 0U);
    for (std::size_t i = 0; i < used; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(dim - i));
        std::swap(positions[i], positions[j]);
    }
    std::vector<Hypervector> out;
    out.reserve(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        Hypervector t(dim);
        for (std::size_t k = 0; k < per_step; ++k)
            t.flip_bit(positions[s * per_step + k]);
        out.push_back(std::move(t));
    }
    return out;
}

void put_le(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i)
        out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, int bytes) {
    if (offset + static_cast<std::size_t>(bytes) > in.size())
        throw std::invalid_argument("BasisSet::deserialize: truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
        v |= static_cast<std::uint64_t>(in[offset + i]) << (8 * i);
    return v;
}

} // namespace

std::string_view to_string(BasisKind kind) {
    switch (kind) {
    case BasisKind::random: return "random";
    case BasisKind::level: return "level";
    case BasisKind::circular: return "circular";
    }
    return "unknown";
}

BasisKind parse_basis_kind(std::string_view name) {
    if (name == "random") return BasisKind::random;
    if (name == "level") return BasisKind::level;
    if (name == "circular") return BasisKind::circular;
    throw std::invalid_argument("unknown basis kind '" + std::string(name) + "'");
}

BasisSet generate_random_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
    require(n >= 1, "generate_random_set: n must be at least 1");
    require(dim >= 1, "generate_random_set: d must be at least 1");
    Rng rng(seed);
    BasisSet set{BasisKind::random, dim, seed, {}};
    set.vectors.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        set.vectors.push_back(random_hypervector(dim, rng));
    return set;
}

BasisSet generate_level_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
    require(n >= 2, "generate_level_set: n must be at least 2");
    require(dim >= 2 * (n - 1), "generate_level_set: d must be at least 2(n-1)");
    Rng rng(seed);
    const std::size_t per_step = dim / (2 * (n - 1));
    BasisSet set{BasisKind::level, dim, seed, {}};
    set.vectors.reserve(n);
    set.vectors.push_back(random_hypervector(dim, rng));
    for (const auto& t : disjoint_transformations(n - 1, per_step, dim, rng))
        set.vectors.push_back(bind(set.vectors.back(), t));
    return set;
}

BasisSet generate_circular_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
    require(n >= 2, "generate_circular_set: n must be at least 2");
    require(n % 2 == 0, "generate_circular_set: n must be even (use generate_circular_set_odd)");
    require(dim >= n, "generate_circular_set: d must be at least n");
    Rng rng(seed);
    const std::size_t half = n / 2;
    BasisSet set{BasisKind::circular, dim, seed, {}};
    set.vectors.reserve(n);
    set.vectors.push_back(random_hypervector(dim, rng));

    const auto queue = disjoint_transformations(half, dim / n, dim, rng);
    // Forward: c_1 .. c_{n/2+1}.
    for (const auto& t : queue)
        set.vectors.push_back(bind(set.vectors.back(), t));
    // Backward: dequeue in FIFO order; the last transformation is the one
    // that would close the circle back onto c_1, so it is not applied.
    for (std::size_t j = 0; j + 1 < half; ++j)
        set.vectors.push_back(bind(set.vectors.back(), queue[j]));
    return set;
}

BasisSet generate_circular_set_odd(std::size_t n, std::size_t dim, std::uint64_t seed) {
    if (n % 2 == 0)
        return generate_circular_set(n, dim, seed);
    require(n >= 3, "generate_circular_set_odd: n must be at least 3");
    require(dim >= 2 * n, "generate_circular_set_odd: d must be at least 2n");
    BasisSet parent = generate_circular_set(2 * n, dim, seed);
    BasisSet set{BasisKind::circular, dim, seed, {}};
    set.vectors.reserve(n);
    for (std::size_t i = 0; i < parent.size(); i += 2)
        set.vectors.push_back(std::move(parent.vectors[i]));
    return set;
}

BasisSet generate_circular(std::size_t n, std::size_t dim, std::uint64_t seed) {
    return n % 2 == 0 ? generate_circular_set(n, dim, seed) : generate_circular_set_odd(n, dim, seed);
}

BasisSet generate_set(BasisKind kind, std::size_t n, std::size_t dim, std::uint64_t seed) {
    switch (kind) {
    case BasisKind::random: return generate_random_set(n, dim, seed);
    case BasisKind::level: return generate_level_set(n, dim, seed);
    case BasisKind::circular: return generate_circular(n, dim, seed);
    }
    throw std::invalid_argument("generate_set: unknown kind");
}

std::vector<std::uint8_t> BasisSet::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(17 + vectors.size() * serialized_size(dim));
    put_le(out, static_cast<std::uint8_t>(kind), 1);
    put_le(out, vectors.size(), 4);
    put_le(out, dim, 4);
    put_le(out, seed, 8);
    for (const auto& v : vectors) {
        const auto bytes = v.serialize();
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

BasisSet BasisSet::deserialize(std::span<const std::uint8_t> bytes) {
    const auto kind_raw = get_le(bytes, 0, 1);
    if (kind_raw > 2)
        throw std::invalid_argument("BasisSet::deserialize: bad kind");
    const auto n = static_cast<std::size_t>(get_le(bytes, 1, 4));
    const auto dim = static_cast<std::size_t>(get_le(bytes, 5, 4));
    const auto seed = get_le(bytes, 9, 8);
    const std::size_t stride = serialized_size(dim);
    if (bytes.size() != 17 + n * stride)
        throw std::invalid_argument("BasisSet::deserialize: size does not match header");
    BasisSet set{static_cast<BasisKind>(kind_raw), dim, seed, {}};
    set.vectors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = Hypervector::deserialize(bytes.subspan(17 + i * stride, stride));
        if (v.dim() != dim)
            throw std::invalid_argument("BasisSet::deserialize: vector dimension mismatch");
        set.vectors.push_back(std::move(v));
    }
    return set;
}

SimilarityProfile::SimilarityProfile(const BasisSet& set) : n_(set.size()), values_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
        values_[i * n_ + i] = 1.0;
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double s = similarity(set.vectors[i], set.vectors[j]);
            values_[i * n_ + j] = s;
            values_[j * n_ + i] = s;
        }
    }
}

} // namespace hdhash

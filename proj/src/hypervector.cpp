#include "hdhash/hypervector.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace hdhash {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t dim) { return (dim + kWordBits - 1) / kWordBits; }

std::uint64_t tail_mask(std::size_t dim) {
    const std::size_t rem = dim % kWordBits;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

void require_same_dim(const Hypervector& a, const Hypervector& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

} // namespace

Hypervector::Hypervector(std::size_t dim) : dim_(dim) {
    if (dim == 0)
        throw std::invalid_argument("Hypervector: dimension must be at least 1");
    words_.assign(word_count(dim), 0);
}

bool Hypervector::bit(std::size_t i) const {
    if (i >= dim_)
        throw std::out_of_range("Hypervector::bit: index out of range");
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void Hypervector::set_bit(std::size_t i, bool value) {
    if (i >= dim_)
        throw std::out_of_range("Hypervector::set_bit: index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value)
        words_[i / kWordBits] |= mask;
    else
        words_[i / kWordBits] &= ~mask;
}

void Hypervector::flip_bit(std::size_t i) {
    if (i >= dim_)
        throw std::out_of_range("Hypervector::flip_bit: index out of range");
    words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::size_t Hypervector::popcount() const noexcept {
    std::size_t total = 0;
    for (const auto w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<std::uint8_t> Hypervector::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(serialized_size(dim_));
    const auto d32 = static_cast<std::uint32_t>(dim_);
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(d32 >> (8 * i)));
    const std::size_t nbytes = (dim_ + 7) / 8;
    for (std::size_t b = 0; b < nbytes; ++b)
        out.push_back(static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8))));
    return out;
}

Hypervector Hypervector::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4)
        throw std::invalid_argument("Hypervector::deserialize: truncated header");
    std::uint32_t d32 = 0;
    for (int i = 0; i < 4; ++i)
        d32 |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
    Hypervector v(d32);
    const std::size_t nbytes = (v.dim_ + 7) / 8;
    if (bytes.size() != 4 + nbytes)
        throw std::invalid_argument("Hypervector::deserialize: size does not match dimension");
    for (std::size_t b = 0; b < nbytes; ++b)
        v.words_[b / 8] |= static_cast<std::uint64_t>(bytes[4 + b]) << (8 * (b % 8));
    if ((v.words_.back() & ~tail_mask(v.dim_)) != 0)
        throw std::invalid_argument("Hypervector::deserialize: non-zero padding bits");
    return v;
}

Hypervector random_hypervector(std::size_t dim, Rng& rng) {
    Hypervector v(dim);
    auto words = v.mutable_words();
    for (auto& w : words)
        w = rng.next();
    words.back() &= tail_mask(dim);
    return v;
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a, b, "bind");
    Hypervector out(a.dim());
    auto dst = out.mutable_words();
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = wa[i] ^ wb[i];
    return out;
}

std::size_t hamming(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a, b, "hamming");
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    return total;
}

double similarity(const Hypervector& a, const Hypervector& b) {
    const auto h = static_cast<double>(hamming(a, b));
    return 1.0 - 2.0 * h / static_cast<double>(a.dim());
}

Hypervector flip_random_bits(const Hypervector& v, std::size_t count, Rng& rng) {
    if (count > v.dim())
        throw std::invalid_argument("flip_random_bits: count exceeds dimension");
    Hypervector out = v;
    for (const auto pos : rng.sample_distinct(v.dim(), count))
        out.flip_bit(static_cast<std::size_t>(pos));
    return out;
}

} // namespace hdhash

#include "hdhash/faults.hpp"

#include "hdhash/hash_table.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace hdhash {

void CorruptionSurface::add_words(std::span<std::uint64_t> words, std::size_t bits) {
    if (bits > words.size() * 64)
        throw std::invalid_argument("CorruptionSurface::add_words: bit count exceeds storage");
    if (bits == 0)
        return;
    segments_.push_back(Segment{words, {}, bits, total_bits_});
    total_bits_ += bits;
}

void CorruptionSurface::add_bytes(std::span<char> bytes) {
    if (bytes.empty())
        return;
    segments_.push_back(Segment{{}, bytes, bytes.size() * 8, total_bits_});
    total_bits_ += bytes.size() * 8;
}

const CorruptionSurface::Segment& CorruptionSurface::locate(std::size_t pos) const {
    if (pos >= total_bits_)
        throw std::out_of_range("CorruptionSurface: bit position out of range");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), pos,
                               [](std::size_t p, const Segment& s) { return p < s.offset; });
    return *std::prev(it);
}

bool CorruptionSurface::bit(std::size_t pos) const {
    const Segment& seg = locate(pos);
    const std::size_t local = pos - seg.offset;
    if (!seg.words.empty())
        return (seg.words[local / 64] >> (local % 64)) & 1U;
    return (static_cast<unsigned char>(seg.bytes[local / 8]) >> (local % 8)) & 1U;
}

void CorruptionSurface::flip(std::size_t pos) {
    const Segment& seg = locate(pos);
    const std::size_t local = pos - seg.offset;
    if (!seg.words.empty())
        seg.words[local / 64] ^= std::uint64_t{1} << (local % 64);
    else
        seg.bytes[local / 8] = static_cast<char>(static_cast<unsigned char>(seg.bytes[local / 8]) ^
                                                 (1U << (local % 8)));
}

std::vector<std::uint8_t> CorruptionSurface::serialize() const {
    std::vector<std::uint8_t> out;
    for (const auto& seg : segments_) {
        const std::size_t nbytes = (seg.bits + 7) / 8;
        for (std::size_t b = 0; b < nbytes; ++b) {
            if (!seg.words.empty())
                out.push_back(static_cast<std::uint8_t>(seg.words[b / 8] >> (8 * (b % 8))));
            else
                out.push_back(static_cast<std::uint8_t>(seg.bytes[b]));
        }
    }
    return out;
}

std::vector<std::size_t> inject(CorruptionSurface& surface, const NoiseSpec& spec, Rng& rng) {
    if (spec.burst_length == 0)
        throw std::invalid_argument("inject: burst_length must be at least 1");
    const std::size_t total = surface.total_bits();
    std::vector<std::size_t> flipped;

    if (spec.burst_length == 1) {
        if (spec.total_flips > total)
            throw std::invalid_argument("inject: flip count exceeds surface size");
        for (const auto pos : rng.sample_distinct(total, spec.total_flips))
            flipped.push_back(static_cast<std::size_t>(pos));
    } else {
        if (spec.total_flips != spec.burst_length)
            throw std::invalid_argument("inject: a burst flips exactly burst_length bits");
        if (spec.burst_length > total)
            throw std::invalid_argument("inject: burst does not fit in surface");
        const auto start = static_cast<std::size_t>(rng.below(total - spec.burst_length + 1));
        for (std::size_t i = 0; i < spec.burst_length; ++i)
            flipped.push_back(start + i);
    }

    for (const auto pos : flipped)
        surface.flip(pos);
    return flipped;
}

std::vector<std::size_t> inject(CorruptionSurface& surface, const NoiseSpec& spec) {
    Rng rng(spec.seed);
    return inject(surface, spec, rng);
}

std::unique_ptr<HashTable> snapshot(const HashTable& table) { return table.clone(); }

} // namespace hdhash

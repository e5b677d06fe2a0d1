#include "hdhash/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace hdhash {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("Rng::below: bound must be positive");
    // Lemire's multiply-shift with rejection of the biased low region.
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::vector<std::uint64_t> Rng::sample_distinct(std::uint64_t total, std::uint64_t count) {
    if (count > total)
        throw std::invalid_argument("Rng::sample_distinct: count exceeds population");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (count <= total / 2) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(count * 2);
        while (out.size() < count) {
            const std::uint64_t v = below(total);
            if (seen.insert(v).second)
                out.push_back(v);
        }
        return out;
    }
    // Dense case: partial Fisher-Yates.
    std::vector<std::uint64_t> pool(total);
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t j = i + below(total - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

} // namespace hdhash

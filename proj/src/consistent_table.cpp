#include "hdhash/hash.hpp"
#include "hdhash/strategy.hpp"

#include <algorithm>

namespace hdhash {

void ConsistentTable::join(const ServerId& server) { join_at(server, hash64(server.bytes(), hash_seed_)); }

void ConsistentTable::join_at(const ServerId& server, std::uint64_t position) {
    if (std::find(owners_.begin(), owners_.end(), server) != owners_.end())
        throw DuplicateServerError(server);
    // Insert after every entry ordered before (position, server).
    std::size_t at = 0;
    while (at < positions_.size() &&
           (positions_[at] < position || (positions_[at] == position && owners_[at] < server)))
        ++at;
    positions_.insert(positions_.begin() + static_cast<std::ptrdiff_t>(at), position);
    owners_.insert(owners_.begin() + static_cast<std::ptrdiff_t>(at), server);
}

void ConsistentTable::leave(const ServerId& server) {
    auto it = std::find(owners_.begin(), owners_.end(), server);
    if (it == owners_.end())
        throw UnknownServerError(server);
    const auto index = it - owners_.begin();
    owners_.erase(it);
    positions_.erase(positions_.begin() + index);
}

ServerId ConsistentTable::owner_of(std::uint64_t position) const {
    if (owners_.empty())
        throw EmptyTableError();
    // Lower bound by hand: the array may violate sortedness after corruption,
    // and the search must still be well defined on it.
    std::size_t lo = 0;
    std::size_t hi = positions_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (positions_[mid] < position)
            lo = mid + 1;
        else
            hi = mid;
    }
    return owners_[lo == positions_.size() ? 0 : lo];
}

ServerId ConsistentTable::lookup(const RequestId& request) const {
    return owner_of(hash64(request.bytes(), hash_seed_));
}

CorruptionSurface ConsistentTable::corruption_surface() {
    CorruptionSurface surface;
    surface.add_words(positions_, positions_.size() * 64);
    return surface;
}

} // namespace hdhash

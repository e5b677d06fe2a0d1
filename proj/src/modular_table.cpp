#include "hdhash/hash.hpp"
#include "hdhash/strategy.hpp"

#include <algorithm>
#include <numeric>

namespace hdhash {

void ModularTable::join(const ServerId& server) {
    if (std::find(servers_.begin(), servers_.end(), server) != servers_.end())
        throw DuplicateServerError(server);
    slots_.push_back(servers_.size());
    servers_.push_back(server);
}

void ModularTable::leave(const ServerId& server) {
    auto it = std::find(servers_.begin(), servers_.end(), server);
    if (it == servers_.end())
        throw UnknownServerError(server);
    servers_.erase(it);
    // Remaining servers are re-indexed in join order.
    slots_.resize(servers_.size());
    std::iota(slots_.begin(), slots_.end(), std::uint64_t{0});
}

ServerId ModularTable::lookup(const RequestId& request) const {
    if (servers_.empty())
        throw EmptyTableError();
    const std::uint64_t k = servers_.size();
    const std::uint64_t slot = hash64(request.bytes(), hash_seed_) % k;
    return servers_[slots_[slot] % k];
}

CorruptionSurface ModularTable::corruption_surface() {
    CorruptionSurface surface;
    surface.add_words(slots_, slots_.size() * 64);
    return surface;
}

} // namespace hdhash

#include "hdhash/hash.hpp"
#include "hdhash/strategy.hpp"

#include <algorithm>

namespace hdhash {

void RendezvousTable::join(const ServerId& server) {
    if (std::find(ids_.begin(), ids_.end(), server.bytes()) != ids_.end())
        throw DuplicateServerError(server);
    ids_.push_back(server.bytes());
}

void RendezvousTable::leave(const ServerId& server) {
    auto it = std::find(ids_.begin(), ids_.end(), server.bytes());
    if (it == ids_.end())
        throw UnknownServerError(server);
    ids_.erase(it);
}

std::uint64_t RendezvousTable::score(std::string_view server, const RequestId& request) const {
    std::string joint;
    joint.reserve(server.size() + 1 + request.bytes().size());
    joint.append(server);
    joint.push_back('\0');
    joint.append(request.bytes());
    return hash64(joint, hash_seed_);
}

ServerId RendezvousTable::lookup(const RequestId& request) const {
    if (ids_.empty())
        throw EmptyTableError();
    const std::string& key = request.bytes();
    std::string joint;
    std::size_t best = 0;
    std::uint64_t best_score = 0;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        joint.assign(ids_[i]);
        joint.push_back('\0');
        joint.append(key);
        const std::uint64_t s = hash64(joint, hash_seed_);
        if (i == 0 || s > best_score || (s == best_score && ids_[i] < ids_[best])) {
            best = i;
            best_score = s;
        }
    }
    return ServerId(ids_[best]);
}

std::vector<ServerId> RendezvousTable::servers() const {
    std::vector<ServerId> out;
    out.reserve(ids_.size());
    for (const auto& id : ids_)
        out.emplace_back(id);
    return out;
}

CorruptionSurface RendezvousTable::corruption_surface() {
    CorruptionSurface surface;
    for (auto& id : ids_)
        surface.add_bytes(std::span<char>(id.data(), id.size()));
    return surface;
}

} // namespace hdhash

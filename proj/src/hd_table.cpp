#include "hdhash/hash.hpp"
#include "hdhash/strategy.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace hdhash {

void HdTableConfig::validate() const {
    if (n < 2)
        throw std::invalid_argument("HdTableConfig: n must be at least 2");
    if (dim < n)
        throw std::invalid_argument("HdTableConfig: d must be at least n");
}

namespace {

std::shared_ptr<const BasisSet> build_circular(const HdTableConfig& config) {
    config.validate();
    return std::make_shared<const BasisSet>(generate_circular(config.n, config.dim, config.seed));
}

} // namespace

HdTable::HdTable(const HdTableConfig& config, std::uint64_t hash_seed)
    : HdTable(build_circular(config), hash_seed) {}

HdTable::HdTable(std::shared_ptr<const BasisSet> circular, std::uint64_t hash_seed)
    : circular_(std::move(circular)), hash_seed_(hash_seed) {
    if (!circular_ || circular_->kind != BasisKind::circular || circular_->size() < 2)
        throw std::invalid_argument("HdTable: requires a circular basis set with at least 2 vectors");
}

std::size_t HdTable::encode_index(std::string_view bytes) const {
    return static_cast<std::size_t>(hash64(bytes, hash_seed_) % circular_->size());
}

const Hypervector& HdTable::encode(std::string_view bytes) const {
    return circular_->vectors[encode_index(bytes)];
}

void HdTable::join(const ServerId& server) {
    if (std::find(ids_.begin(), ids_.end(), server) != ids_.end())
        throw DuplicateServerError(server);
    if (ids_.size() + 1 >= capacity())
        throw CapacityError("HD table full: " + std::to_string(ids_.size()) + " servers with n = " +
                            std::to_string(capacity()));
    ids_.push_back(server);
    stored_.push_back(encode(server.bytes()));
}

void HdTable::leave(const ServerId& server) {
    auto it = std::find(ids_.begin(), ids_.end(), server);
    if (it == ids_.end())
        throw UnknownServerError(server);
    const auto index = it - ids_.begin();
    ids_.erase(it);
    stored_.erase(stored_.begin() + index);
}

ServerId HdTable::lookup(const RequestId& request) const {
    if (ids_.empty())
        throw EmptyTableError();
    const auto query = encode(request.bytes()).words();
    // Highest similarity is lowest Hamming distance.
    std::size_t best = 0;
    std::size_t best_distance = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < stored_.size(); ++i) {
        const auto words = stored_[i].words();
        std::size_t distance = 0;
        for (std::size_t w = 0; w < words.size(); ++w)
            distance += static_cast<std::size_t>(std::popcount(words[w] ^ query[w]));
        if (distance < best_distance || (distance == best_distance && ids_[i] < ids_[best])) {
            best = i;
            best_distance = distance;
        }
    }
    return ids_[best];
}

CorruptionSurface HdTable::corruption_surface() {
    CorruptionSurface surface;
    for (auto& v : stored_)
        surface.add_words(v.mutable_words(), v.dim());
    return surface;
}

} // namespace hdhash

#include "hdhash/strategy.hpp"

#include <stdexcept>
#include <string>

namespace hdhash {

std::vector<ServerId> HashTable::batch_lookup(std::span<const RequestId> requests) const {
    std::vector<ServerId> out;
    out.reserve(requests.size());
    for (const auto& r : requests)
        out.push_back(lookup(r));
    return out;
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::modular: return "modular";
    case StrategyKind::consistent: return "consistent";
    case StrategyKind::rendezvous: return "rendezvous";
    case StrategyKind::hd: return "hd";
    }
    return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
    if (name == "modular") return StrategyKind::modular;
    if (name == "consistent") return StrategyKind::consistent;
    if (name == "rendezvous") return StrategyKind::rendezvous;
    if (name == "hd") return StrategyKind::hd;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::unique_ptr<HashTable> make_table(StrategyKind kind, const TableOptions& options) {
    switch (kind) {
    case StrategyKind::modular: return std::make_unique<ModularTable>(options.hash_seed);
    case StrategyKind::consistent: return std::make_unique<ConsistentTable>(options.hash_seed);
    case StrategyKind::rendezvous: return std::make_unique<RendezvousTable>(options.hash_seed);
    case StrategyKind::hd:
        if (options.circular)
            return std::make_unique<HdTable>(options.circular, options.hash_seed);
        return std::make_unique<HdTable>(options.hd, options.hash_seed);
    }
    throw std::invalid_argument("make_table: unknown strategy");
}

} // namespace hdhash

#pragma once

#include "hdhash/basis.hpp"
#include "hdhash/hash_table.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hdhash {

enum class StrategyKind { modular, consistent, rendezvous, hd };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);

/// Request i goes to the server at index hash64(r) mod k in join order.
///
/// The corruption surface is the join-order index array (one 64-bit slot per
/// server); a corrupted slot is reduced modulo k before use.
class ModularTable final : public HashTable {
public:
    explicit ModularTable(std::uint64_t hash_seed = 0) : hash_seed_(hash_seed) {}

    std::string_view name() const noexcept override { return "modular"; }
    void join(const ServerId& server) override;
    void leave(const ServerId& server) override;
    ServerId lookup(const RequestId& request) const override;
    std::size_t server_count() const noexcept override { return servers_.size(); }
    std::vector<ServerId> servers() const override { return servers_; }
    CorruptionSurface corruption_surface() override;
    std::unique_ptr<HashTable> clone() const override { return std::make_unique<ModularTable>(*this); }

private:
    std::uint64_t hash_seed_;
    std::vector<ServerId> servers_;
    std::vector<std::uint64_t> slots_;
};

/// Ring of raw 64-bit positions; a request goes to the first server at or
/// clockwise after hash64(r), found by binary search.
///
/// One ring point per server. Positions tie-break by server id. The sorted
/// position array is the corruption surface and is never re-sorted after
/// corruption.
class ConsistentTable final : public HashTable {
public:
    explicit ConsistentTable(std::uint64_t hash_seed = 0) : hash_seed_(hash_seed) {}

    std::string_view name() const noexcept override { return "consistent"; }
    void join(const ServerId& server) override;
    /// Joins at an explicit ring position instead of the hashed one.
    void join_at(const ServerId& server, std::uint64_t position);
    void leave(const ServerId& server) override;
    ServerId lookup(const RequestId& request) const override;
    /// Clockwise successor of an explicit ring position.
    ServerId owner_of(std::uint64_t position) const;
    std::size_t server_count() const noexcept override { return owners_.size(); }
    std::vector<ServerId> servers() const override { return owners_; }
    CorruptionSurface corruption_surface() override;
    std::unique_ptr<HashTable> clone() const override { return std::make_unique<ConsistentTable>(*this); }

    std::span<const std::uint64_t> positions() const noexcept { return positions_; }

private:
    std::uint64_t hash_seed_;
    std::vector<std::uint64_t> positions_;
    std::vector<ServerId> owners_;
};

/// Highest random weight: argmax over servers of
/// hash64(server bytes ++ '\0' ++ request bytes). Ties go to the smallest id.
///
/// The stored server-id byte strings are the corruption surface.
class RendezvousTable final : public HashTable {
public:
    explicit RendezvousTable(std::uint64_t hash_seed = 0) : hash_seed_(hash_seed) {}

    std::string_view name() const noexcept override { return "rendezvous"; }
    void join(const ServerId& server) override;
    void leave(const ServerId& server) override;
    ServerId lookup(const RequestId& request) const override;
    std::size_t server_count() const noexcept override { return ids_.size(); }
    std::vector<ServerId> servers() const override;
    CorruptionSurface corruption_surface() override;
    std::unique_ptr<HashTable> clone() const override { return std::make_unique<RendezvousTable>(*this); }

    /// The joint weight h(s, r).
    std::uint64_t score(std::string_view server, const RequestId& request) const;

private:
    std::uint64_t hash_seed_;
    std::vector<std::string> ids_;
};

inline constexpr std::size_t kDefaultCircularSize = 8192;

struct HdTableConfig {
    std::size_t n = kDefaultCircularSize;  ///< circular-set cardinality
    std::size_t dim = kDefaultDimension;
    std::uint64_t seed = 0;                ///< circular-set seed

    /// Throws std::invalid_argument unless n >= 2 and d >= n.
    void validate() const;
};

/// Hyperdimensional hashing.
///
/// Servers and requests are encoded as C[hash64(x) mod n] over a shared
/// circular basis set C. Server encodings are stored at join time; lookup
/// returns the stored server most similar to the request encoding, ties going
/// to the smallest id. The stored hypervectors are the corruption surface; C
/// itself is shared and never exposed for corruption.
class HdTable final : public HashTable {
public:
    explicit HdTable(const HdTableConfig& config, std::uint64_t hash_seed = 0);
    /// Shares an existing circular set (must be circular, cardinality >= 2).
    HdTable(std::shared_ptr<const BasisSet> circular, std::uint64_t hash_seed = 0);

    std::string_view name() const noexcept override { return "hd"; }
    void join(const ServerId& server) override;
    void leave(const ServerId& server) override;
    ServerId lookup(const RequestId& request) const override;
    std::size_t server_count() const noexcept override { return ids_.size(); }
    std::vector<ServerId> servers() const override { return ids_; }
    CorruptionSurface corruption_surface() override;
    std::unique_ptr<HashTable> clone() const override { return std::make_unique<HdTable>(*this); }

    /// Index into C used for an id or request key.
    std::size_t encode_index(std::string_view bytes) const;
    const Hypervector& encode(std::string_view bytes) const;

    std::size_t capacity() const noexcept { return circular_->size(); }
    const BasisSet& circular_set() const noexcept { return *circular_; }
    std::shared_ptr<const BasisSet> shared_circular_set() const noexcept { return circular_; }
    std::span<const Hypervector> stored() const noexcept { return stored_; }
    std::uint64_t hash_seed() const noexcept { return hash_seed_; }

private:
    std::shared_ptr<const BasisSet> circular_;
    std::uint64_t hash_seed_;
    std::vector<ServerId> ids_;
    std::vector<Hypervector> stored_;
};

struct TableOptions {
    std::uint64_t hash_seed = 0;
    HdTableConfig hd;
    /// Optional pre-built circular set for HD tables; built from `hd` if null.
    std::shared_ptr<const BasisSet> circular;
};

std::unique_ptr<HashTable> make_table(StrategyKind kind, const TableOptions& options = {});

} // namespace hdhash

#pragma once

#include "hdhash/faults.hpp"
#include "hdhash/ids.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hdhash {

/// Base for all table errors (empty table, duplicate or unknown server, capacity).
class TableError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class EmptyTableError : public TableError {
public:
    EmptyTableError() : TableError("lookup on an empty table") {}
};

class DuplicateServerError : public TableError {
public:
    explicit DuplicateServerError(const ServerId& id) : TableError("server already present: " + id.bytes()) {}
};

class UnknownServerError : public TableError {
public:
    explicit UnknownServerError(const ServerId& id) : TableError("unknown server: " + id.bytes()) {}
};

class CapacityError : public TableError {
    using TableError::TableError;
};

/// A dynamic hash table mapping requests onto a changing set of servers.
///
/// Writes (join, leave, corruption) require exclusive access; lookups on an
/// unmodified table may run concurrently.
class HashTable {
public:
    virtual ~HashTable() = default;

    virtual std::string_view name() const noexcept = 0;

    virtual void join(const ServerId& server) = 0;
    virtual void leave(const ServerId& server) = 0;

    /// Throws EmptyTableError when no server is present.
    virtual ServerId lookup(const RequestId& request) const = 0;

    /// Element-wise lookup; result[i] == lookup(requests[i]).
    virtual std::vector<ServerId> batch_lookup(std::span<const RequestId> requests) const;

    virtual std::size_t server_count() const noexcept = 0;

    /// Identifiers as currently stored (after corruption, for strategies whose
    /// stored state is the identifier itself).
    virtual std::vector<ServerId> servers() const = 0;

    virtual CorruptionSurface corruption_surface() = 0;

    virtual std::unique_ptr<HashTable> clone() const = 0;
};

} // namespace hdhash

#pragma once

#include "hdhash/ids.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hdhash {

struct Assignment {
    RequestId request;
    ServerId server;
};

/// Request-to-server mapping in request generation order.
using AssignmentMap = std::vector<Assignment>;

AssignmentMap make_assignment_map(std::span<const RequestId> requests, std::span<const ServerId> servers);

/// Fraction of positions assigned to different servers. Both maps must cover
/// the same request sequence (std::invalid_argument otherwise).
double mismatch_rate(const AssignmentMap& clean, const AssignmentMap& corrupted);

/// Same measure between the maps before and after a membership change.
double remap_fraction(const AssignmentMap& before, const AssignmentMap& after);

/// Pearson statistic sum((R(s) - E)^2 / E) with E = total_requests / total_servers
/// taken as an exact rational.
double chi_squared(std::span<const std::uint64_t> counts, std::uint64_t total_requests,
                   std::size_t total_servers);

/// Per-server request counts, aligned with `servers`. Throws if the map names
/// a server outside the list.
std::vector<std::uint64_t> count_per_server(const AssignmentMap& map, std::span<const ServerId> servers);

/// Median of a non-empty sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

} // namespace hdhash

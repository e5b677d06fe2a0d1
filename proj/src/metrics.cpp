#include "hdhash/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hdhash {

namespace {

std::size_t count_differences(const AssignmentMap& a, const AssignmentMap& b, const char* what) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(what) + ": maps cover different request counts");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].request != b[i].request)
            throw std::invalid_argument(std::string(what) + ": request sequences differ");
        if (a[i].server != b[i].server)
            ++differing;
    }
    return differing;
}

double fraction(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

} // namespace

AssignmentMap make_assignment_map(std::span<const RequestId> requests, std::span<const ServerId> servers) {
    if (requests.size() != servers.size())
        throw std::invalid_argument("make_assignment_map: length mismatch");
    AssignmentMap map;
    map.reserve(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i)
        map.push_back(Assignment{requests[i], servers[i]});
    return map;
}

double mismatch_rate(const AssignmentMap& clean, const AssignmentMap& corrupted) {
    return fraction(count_differences(clean, corrupted, "mismatch_rate"), clean.size());
}

double remap_fraction(const AssignmentMap& before, const AssignmentMap& after) {
    return fraction(count_differences(before, after, "remap_fraction"), before.size());
}

double chi_squared(std::span<const std::uint64_t> counts, std::uint64_t total_requests,
                   std::size_t total_servers) {
    if (total_servers == 0)
        throw std::invalid_argument("chi_squared: at least one server required");
    if (counts.size() != total_servers)
        throw std::invalid_argument("chi_squared: counts length differs from server count");
    if (total_requests == 0)
        throw std::invalid_argument("chi_squared: expected count is zero (no requests)");
    if (std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) != total_requests)
        throw std::invalid_argument("chi_squared: counts do not sum to total_requests");

    // (c - R/S)^2 / (R/S) == (c*S - R)^2 / (R*S); accumulate the numerator exactly.
    const auto servers = static_cast<__int128>(total_servers);
    const auto requests = static_cast<__int128>(total_requests);
    unsigned __int128 numerator = 0;
    for (const auto c : counts) {
        const __int128 diff = static_cast<__int128>(c) * servers - requests;
        numerator += static_cast<unsigned __int128>(diff * diff);
    }
    return static_cast<double>(static_cast<long double>(numerator) /
                               (static_cast<long double>(total_requests) * static_cast<long double>(total_servers)));
}

std::vector<std::uint64_t> count_per_server(const AssignmentMap& map, std::span<const ServerId> servers) {
    std::map<ServerId, std::size_t> index;
    for (std::size_t i = 0; i < servers.size(); ++i)
        index.emplace(servers[i], i);
    std::vector<std::uint64_t> counts(servers.size(), 0);
    for (const auto& a : map) {
        auto it = index.find(a.server);
        if (it == index.end())
            throw std::invalid_argument("count_per_server: assignment to unlisted server " + a.server.bytes());
        ++counts[it->second];
    }
    return counts;
}

double median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("median: empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

} // namespace hdhash

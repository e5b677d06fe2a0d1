#pragma once

#include "hdhash/hash_table.hpp"
#include "hdhash/metrics.hpp"
#include "hdhash/strategy.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hdhash {

/// "server-<i>", the identifier of the i-th joined server (1-based).
std::string server_name(std::size_t i);

/// Request keys: key i is the decimal form of hash64(decimal(i), stream_seed).
std::vector<RequestId> generate_request_keys(std::size_t count, std::uint64_t stream_seed);

struct Event {
    enum class Kind { join, leave, request };
    Kind kind;
    std::string id;
};

/// Deterministic schedule of data requests interleaved with join/leave
/// control requests.
class RequestStream {
public:
    /// Joins server-1..server-k, then `count` data requests.
    static RequestStream with_servers(std::size_t servers, std::size_t count, std::uint64_t seed);

    /// Like with_servers, with `churn` join/leave events placed at random
    /// points among the data requests. At least one server stays present.
    static RequestStream with_churn(std::size_t servers, std::size_t count, std::size_t churn,
                                    std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    std::span<const Event> events() const noexcept { return events_; }
    std::size_t request_count() const noexcept;

    /// Throws std::logic_error if a leave names an absent server, a join names
    /// a present one, or a data request arrives with no server present.
    void validate() const;

private:
    explicit RequestStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed_;
    std::vector<Event> events_;
};

/// The hash-table side of the emulator: drains events in order, applying
/// control requests and mapping consecutive data requests in batches.
class HashTableModule {
public:
    HashTableModule(HashTable& table, std::size_t batch_size);

    AssignmentMap run(const RequestStream& stream);

private:
    HashTable& table_;
    std::size_t batch_size_;
};

/// Maps `requests` in batches of `batch_size`.
AssignmentMap assign_all(const HashTable& table, std::span<const RequestId> requests, std::size_t batch_size);

enum class Experiment { timing, robustness, uniformity, remap };

std::string_view to_string(Experiment experiment);

struct ExperimentConfig {
    std::vector<StrategyKind> strategies;
    std::vector<std::size_t> servers;
    std::size_t requests = 10000;
    std::size_t dim = kDefaultDimension;
    std::size_t n = kDefaultCircularSize;
    std::vector<std::size_t> noise;
    /// 1: each noise level is that many independent flips. B > 1: each noise
    /// level L is delivered as L / B separate B-bit bursts.
    std::size_t burst = 1;
    std::vector<std::uint64_t> seeds;
    std::size_t batch = 256;
    /// Worker threads for independent cells (ignored by the timing experiment).
    std::size_t jobs = 1;

    static ExperimentConfig defaults(Experiment experiment);

    /// Throws std::invalid_argument on any out-of-range field.
    void validate(Experiment experiment) const;
};

/// Sub-seeds of one replication seed.
struct CellSeeds {
    std::uint64_t stream;
    std::uint64_t hash;
    std::uint64_t basis;
    std::uint64_t noise;
    std::uint64_t membership;

    static CellSeeds derive(std::uint64_t seed);
};

struct ReportRow {
    std::string strategy;
    std::size_t servers;
    std::size_t noise_bits;
    std::size_t burst;
    std::uint64_t seed;
    std::string metric;
    double value;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> violations;

    void append(ExperimentReport&& other);

    /// Per-seed values of one metric in one (strategy, servers, noise) cell.
    std::vector<double> values(std::string_view strategy, std::size_t servers, std::size_t noise_bits,
                               std::string_view metric) const;
};

inline constexpr std::string_view kCsvHeader = "strategy,servers,noise_bits,burst,seed,metric,value";

void write_csv(std::ostream& out, const ExperimentReport& report);

/// Shortest round-trip decimal form of a double.
std::string format_value(double value);

/// One line per (strategy, servers) cell with per-noise medians over seeds.
std::vector<std::string> summary_lines(const ExperimentReport& report);

/// Builds a table of the given kind for one replication seed and joins
/// server-1..server-k.
std::unique_ptr<HashTable> build_table(StrategyKind kind, const ExperimentConfig& config, std::size_t servers,
                                       const CellSeeds& seeds);

/// Applies one noise level to a surface: `level` independent flips when
/// burst == 1, otherwise level / burst bursts of `burst` bits.
void apply_noise(CorruptionSurface& surface, std::size_t level, std::size_t burst, Rng& rng);

ExperimentReport run_timing(const ExperimentConfig& config);
ExperimentReport run_robustness(const ExperimentConfig& config);
ExperimentReport run_uniformity(const ExperimentConfig& config);
ExperimentReport run_remap(const ExperimentConfig& config);

ExperimentReport run_experiment(Experiment experiment, const ExperimentConfig& config);

} // namespace hdhash

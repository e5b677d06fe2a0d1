#include "hdhash/emulator.hpp"

#include "hdhash/hash.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hdhash {

std::string server_name(std::size_t i) { return "server-" + std::to_string(i); }

std::vector<RequestId> generate_request_keys(std::size_t count, std::uint64_t stream_seed) {
    std::vector<RequestId> keys;
    keys.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        keys.emplace_back(std::to_string(hash64(std::to_string(i), stream_seed)));
    return keys;
}

RequestStream RequestStream::with_servers(std::size_t servers, std::size_t count, std::uint64_t seed) {
    return with_churn(servers, count, 0, seed);
}

RequestStream RequestStream::with_churn(std::size_t servers, std::size_t count, std::size_t churn,
                                        std::uint64_t seed) {
    if (servers == 0 && count > 0)
        throw std::invalid_argument("RequestStream: data requests need at least one server");
    RequestStream stream(seed);
    Rng rng(mix_seed(seed, 17));
    std::vector<std::string> present;
    for (std::size_t i = 1; i <= servers; ++i) {
        present.push_back(server_name(i));
        stream.events_.push_back(Event{Event::Kind::join, present.back()});
    }

    // Control events land before the data request at each chosen offset.
    std::vector<std::uint64_t> offsets;
    for (std::size_t c = 0; c < churn; ++c)
        offsets.push_back(rng.below(count + 1));
    std::sort(offsets.begin(), offsets.end());

    std::size_t next_server = servers + 1;
    std::size_t next_control = 0;
    const auto keys = generate_request_keys(count, seed);
    for (std::size_t i = 0; i <= count; ++i) {
        while (next_control < offsets.size() && offsets[next_control] == i) {
            const bool can_leave = present.size() > 1;
            if (can_leave && rng.below(2) == 0) {
                const auto victim = static_cast<std::size_t>(rng.below(present.size()));
                stream.events_.push_back(Event{Event::Kind::leave, present[victim]});
                present.erase(present.begin() + static_cast<std::ptrdiff_t>(victim));
            } else {
                present.push_back(server_name(next_server++));
                stream.events_.push_back(Event{Event::Kind::join, present.back()});
            }
            ++next_control;
        }
        if (i < count)
            stream.events_.push_back(Event{Event::Kind::request, keys[i].bytes()});
    }
    return stream;
}

std::size_t RequestStream::request_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(),
                                                  [](const Event& e) { return e.kind == Event::Kind::request; }));
}

void RequestStream::validate() const {
    std::set<std::string> present;
    for (const auto& e : events_) {
        switch (e.kind) {
        case Event::Kind::join:
            if (!present.insert(e.id).second)
                throw std::logic_error("RequestStream: duplicate join of " + e.id);
            break;
        case Event::Kind::leave:
            if (present.erase(e.id) == 0)
                throw std::logic_error("RequestStream: leave of absent server " + e.id);
            break;
        case Event::Kind::request:
            if (present.empty())
                throw std::logic_error("RequestStream: request with no server present");
            break;
        }
    }
}

HashTableModule::HashTableModule(HashTable& table, std::size_t batch_size)
    : table_(table), batch_size_(batch_size) {
    if (batch_size_ == 0)
        throw std::invalid_argument("HashTableModule: batch size must be positive");
}

AssignmentMap HashTableModule::run(const RequestStream& stream) {
    AssignmentMap out;
    out.reserve(stream.request_count());
    std::vector<RequestId> buffer;
    buffer.reserve(batch_size_);
    auto flush = [&] {
        const auto servers = table_.batch_lookup(buffer);
        for (std::size_t i = 0; i < buffer.size(); ++i)
            out.push_back(Assignment{std::move(buffer[i]), servers[i]});
        buffer.clear();
    };
    for (const auto& e : stream.events()) {
        switch (e.kind) {
        case Event::Kind::join:
            flush();
            table_.join(ServerId(e.id));
            break;
        case Event::Kind::leave:
            flush();
            table_.leave(ServerId(e.id));
            break;
        case Event::Kind::request:
            buffer.emplace_back(e.id);
            if (buffer.size() == batch_size_)
                flush();
            break;
        }
    }
    flush();
    return out;
}

AssignmentMap assign_all(const HashTable& table, std::span<const RequestId> requests, std::size_t batch_size) {
    AssignmentMap out;
    out.reserve(requests.size());
    for (std::size_t start = 0; start < requests.size(); start += batch_size) {
        const auto batch = requests.subspan(start, std::min(batch_size, requests.size() - start));
        const auto servers = table.batch_lookup(batch);
        for (std::size_t i = 0; i < batch.size(); ++i)
            out.push_back(Assignment{batch[i], servers[i]});
    }
    return out;
}

std::string_view to_string(Experiment experiment) {
    switch (experiment) {
    case Experiment::timing: return "timing";
    case Experiment::robustness: return "robustness";
    case Experiment::uniformity: return "uniformity";
    case Experiment::remap: return "remap";
    }
    return "unknown";
}

ExperimentConfig ExperimentConfig::defaults(Experiment experiment) {
    ExperimentConfig config;
    config.seeds = {1, 2, 3, 4, 5};
    config.noise.resize(11);
    std::iota(config.noise.begin(), config.noise.end(), std::size_t{0});
    switch (experiment) {
    case Experiment::timing:
        config.strategies = {StrategyKind::modular, StrategyKind::consistent, StrategyKind::rendezvous,
                             StrategyKind::hd};
        for (std::size_t k = 2; k <= 2048; k *= 2)
            config.servers.push_back(k);
        config.noise = {0};
        break;
    case Experiment::robustness:
    case Experiment::uniformity:
        config.strategies = {StrategyKind::consistent, StrategyKind::rendezvous, StrategyKind::hd};
        config.servers = {64, 128, 256, 512};
        break;
    case Experiment::remap:
        config.strategies = {StrategyKind::modular, StrategyKind::consistent, StrategyKind::rendezvous,
                             StrategyKind::hd};
        config.servers = {8, 64, 256};
        config.noise = {0};
        break;
    }
    return config;
}

void ExperimentConfig::validate(Experiment experiment) const {
    auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
    if (strategies.empty()) fail("strategies must not be empty");
    if (servers.empty()) fail("servers must not be empty");
    if (seeds.empty()) fail("seeds must not be empty");
    if (noise.empty()) fail("noise must not be empty");
    if (requests == 0) fail("requests must be positive");
    if (dim == 0) fail("d must be positive");
    if (batch == 0) fail("batch must be positive");
    if (jobs == 0) fail("jobs must be positive");
    if (burst == 0) fail("burst must be positive");
    if (n < 2) fail("n must be at least 2");
    if (dim < n) fail("d must be at least n");
    for (const auto k : servers) {
        if (k == 0) fail("server counts must be positive");
        if (experiment == Experiment::remap && k < 2) fail("remap needs at least 2 servers");
    }
    for (const auto level : noise)
        if (burst > 1 && level % burst != 0)
            fail("noise level " + std::to_string(level) + " is not a multiple of burst " + std::to_string(burst));
    if (std::find(strategies.begin(), strategies.end(), StrategyKind::hd) != strategies.end()) {
        const std::size_t largest = *std::max_element(servers.begin(), servers.end());
        const std::size_t needed = largest + (experiment == Experiment::remap ? 1 : 0);
        if (needed >= n) fail("n must exceed the largest HD server count");
    }
}

CellSeeds CellSeeds::derive(std::uint64_t seed) {
    return CellSeeds{mix_seed(seed, 1), mix_seed(seed, 2), mix_seed(seed, 3), mix_seed(seed, 4), mix_seed(seed, 5)};
}

void ExperimentReport::append(ExperimentReport&& other) {
    rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()), std::make_move_iterator(other.rows.end()));
    violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                      std::make_move_iterator(other.violations.end()));
}

std::vector<double> ExperimentReport::values(std::string_view strategy, std::size_t servers, std::size_t noise_bits,
                                             std::string_view metric) const {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.strategy == strategy && r.servers == servers && r.noise_bits == noise_bits && r.metric == metric)
            out.push_back(r.value);
    return out;
}

std::string format_value(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
    out << kCsvHeader << '\n';
    for (const auto& r : report.rows)
        out << r.strategy << ',' << r.servers << ',' << r.noise_bits << ',' << r.burst << ',' << r.seed << ','
            << r.metric << ',' << format_value(r.value) << '\n';
}

std::vector<std::string> summary_lines(const ExperimentReport& report) {
    // (strategy, servers) -> metric -> noise -> values, in first-seen order.
    std::vector<std::pair<std::string, std::size_t>> order;
    std::map<std::pair<std::string, std::size_t>, std::map<std::string, std::map<std::size_t, std::vector<double>>>>
        cells;
    for (const auto& r : report.rows) {
        const auto key = std::make_pair(r.strategy, r.servers);
        if (!cells.contains(key))
            order.push_back(key);
        cells[key][r.metric][r.noise_bits].push_back(r.value);
    }
    std::vector<std::string> lines;
    for (const auto& key : order) {
        std::ostringstream line;
        line << key.first << " k=" << key.second << ':';
        for (const auto& [metric, by_noise] : cells[key]) {
            line << ' ' << metric << '[';
            bool first = true;
            for (const auto& [noise, values] : by_noise) {
                if (!first)
                    line << ' ';
                first = false;
                if (by_noise.size() > 1)
                    line << noise << '=';
                line << format_value(median(values));
            }
            line << ']';
        }
        lines.push_back(line.str());
    }
    return lines;
}

std::unique_ptr<HashTable> build_table(StrategyKind kind, const ExperimentConfig& config, std::size_t servers,
                                       const CellSeeds& seeds) {
    TableOptions options;
    options.hash_seed = seeds.hash;
    options.hd = HdTableConfig{config.n, config.dim, seeds.basis};
    auto table = make_table(kind, options);
    for (std::size_t i = 1; i <= servers; ++i)
        table->join(ServerId(server_name(i)));
    return table;
}

void apply_noise(CorruptionSurface& surface, std::size_t level, std::size_t burst, Rng& rng) {
    if (level == 0)
        return;
    if (burst <= 1) {
        inject(surface, NoiseSpec{level, 1, rng.seed()}, rng);
        return;
    }
    if (level % burst != 0)
        throw std::invalid_argument("apply_noise: level is not a multiple of the burst length");
    for (std::size_t e = 0; e < level / burst; ++e)
        inject(surface, NoiseSpec{burst, burst, rng.seed()}, rng);
}

namespace {

struct Cell {
    StrategyKind strategy;
    std::size_t servers;
    std::uint64_t seed;
};

std::vector<Cell> enumerate_cells(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    for (const auto s : config.strategies)
        for (const auto k : config.servers)
            for (const auto seed : config.seeds)
                cells.push_back(Cell{s, k, seed});
    return cells;
}

template <typename Fn>
ExperimentReport run_cells(const std::vector<Cell>& cells, std::size_t jobs, Fn&& fn) {
    std::vector<ExperimentReport> results(cells.size());
    const std::size_t workers = std::min(jobs, cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            results[i] = fn(cells[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t i = next++; i < cells.size(); i = next++)
                            results[i] = fn(cells[i]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                        next = cells.size();
                    }
                });
        }
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    ExperimentReport report;
    for (auto& r : results)
        report.append(std::move(r));
    return report;
}

std::size_t popcount_xor(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size())
        throw std::logic_error("surface size changed during injection");
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    return total;
}

std::string cell_label(const Cell& cell) {
    return std::string(to_string(cell.strategy)) + " k=" + std::to_string(cell.servers) +
           " seed=" + std::to_string(cell.seed);
}

ReportRow row(const Cell& cell, std::size_t noise, std::size_t burst, std::string metric, double value) {
    return ReportRow{std::string(to_string(cell.strategy)), cell.servers, noise, burst, cell.seed, std::move(metric),
                     value};
}

bool minimal_disruption_expected(StrategyKind kind) { return kind != StrategyKind::modular; }

} // namespace

ExperimentReport run_timing(const ExperimentConfig& config) {
    config.validate(Experiment::timing);
    ExperimentReport report;
    for (const auto& cell : enumerate_cells(config)) {
        const auto seeds = CellSeeds::derive(cell.seed);
        const auto table = build_table(cell.strategy, config, cell.servers, seeds);
        const auto keys = generate_request_keys(config.requests, seeds.stream);

        auto warm = assign_all(*table, keys, config.batch);
        const auto start = std::chrono::steady_clock::now();
        auto measured = assign_all(*table, keys, config.batch);
        const auto stop = std::chrono::steady_clock::now();
        if (mismatch_rate(warm, measured) != 0.0)
            report.violations.push_back("lookup not deterministic: " + cell_label(cell));

        const auto elapsed = std::chrono::duration<double, std::nano>(stop - start).count();
        report.rows.push_back(row(cell, 0, 1, "latency_ns", elapsed / static_cast<double>(config.requests)));
    }
    return report;
}

ExperimentReport run_robustness(const ExperimentConfig& config) {
    config.validate(Experiment::robustness);
    return run_cells(enumerate_cells(config), config.jobs, [&config](const Cell& cell) {
        ExperimentReport report;
        const auto seeds = CellSeeds::derive(cell.seed);
        const auto clean_table = build_table(cell.strategy, config, cell.servers, seeds);
        const auto keys = generate_request_keys(config.requests, seeds.stream);
        const auto clean_bytes = clean_table->corruption_surface().serialize();
        const auto clean = assign_all(*clean_table, keys, config.batch);

        for (const auto level : config.noise) {
            auto noisy = snapshot(*clean_table);
            auto surface = noisy->corruption_surface();
            Rng rng(seeds.noise);
            apply_noise(surface, level, config.burst, rng);
            const std::size_t flipped = popcount_xor(clean_bytes, surface.serialize());
            const auto corrupted = assign_all(*noisy, keys, config.batch);
            const double rate = mismatch_rate(clean, corrupted);

            report.rows.push_back(row(cell, level, config.burst, "mismatch_rate", rate));
            report.rows.push_back(row(cell, level, config.burst, "flipped_bits", static_cast<double>(flipped)));
            if (level == 0 && rate != 0.0)
                report.violations.push_back("non-zero mismatch without noise: " + cell_label(cell));
            if (config.burst == 1 && flipped != level)
                report.violations.push_back("flip count mismatch: " + cell_label(cell));
        }
        if (clean_table->corruption_surface().serialize() != clean_bytes)
            report.violations.push_back("clean snapshot changed: " + cell_label(cell));
        return report;
    });
}

ExperimentReport run_uniformity(const ExperimentConfig& config) {
    config.validate(Experiment::uniformity);
    return run_cells(enumerate_cells(config), config.jobs, [&config](const Cell& cell) {
        ExperimentReport report;
        const auto seeds = CellSeeds::derive(cell.seed);
        const auto base = build_table(cell.strategy, config, cell.servers, seeds);
        const auto keys = generate_request_keys(config.requests, seeds.stream);
        for (const auto level : config.noise) {
            auto table = snapshot(*base);
            auto surface = table->corruption_surface();
            Rng rng(seeds.noise);
            apply_noise(surface, level, config.burst, rng);
            const auto assigned = assign_all(*table, keys, config.batch);
            const auto servers = table->servers();
            const auto counts = count_per_server(assigned, servers);
            report.rows.push_back(
                row(cell, level, config.burst, "chi_squared", chi_squared(counts, keys.size(), servers.size())));
        }
        return report;
    });
}

ExperimentReport run_remap(const ExperimentConfig& config) {
    config.validate(Experiment::remap);
    return run_cells(enumerate_cells(config), config.jobs, [&config](const Cell& cell) {
        ExperimentReport report;
        const auto seeds = CellSeeds::derive(cell.seed);
        const auto base = build_table(cell.strategy, config, cell.servers, seeds);
        const auto keys = generate_request_keys(config.requests, seeds.stream);
        const auto before = assign_all(*base, keys, config.batch);

        Rng rng(seeds.membership);
        const ServerId departed(server_name(1 + static_cast<std::size_t>(rng.below(cell.servers))));
        auto shrunk = snapshot(*base);
        shrunk->leave(departed);
        const auto after_leave = assign_all(*shrunk, keys, config.batch);

        const ServerId fresh(server_name(cell.servers + 1));
        auto grown = snapshot(*base);
        grown->join(fresh);
        const auto after_join = assign_all(*grown, keys, config.batch);

        std::size_t leave_violations = 0;
        std::size_t join_violations = 0;
        std::size_t departed_share = 0;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const bool owned = before[i].server == departed;
            departed_share += owned ? 1 : 0;
            // Exactly the departed server's requests must move.
            if ((before[i].server != after_leave[i].server) != owned)
                ++leave_violations;
            // Only requests captured by the new server may move.
            if (before[i].server != after_join[i].server && after_join[i].server != fresh)
                ++join_violations;
        }

        report.rows.push_back(row(cell, 0, 1, "remap_leave", remap_fraction(before, after_leave)));
        report.rows.push_back(row(cell, 0, 1, "remap_join", remap_fraction(before, after_join)));
        report.rows.push_back(
            row(cell, 0, 1, "departed_share", static_cast<double>(departed_share) / static_cast<double>(keys.size())));
        report.rows.push_back(row(cell, 0, 1, "leave_violations", static_cast<double>(leave_violations)));
        report.rows.push_back(row(cell, 0, 1, "join_violations", static_cast<double>(join_violations)));
        if (minimal_disruption_expected(cell.strategy) && (leave_violations != 0 || join_violations != 0))
            report.violations.push_back("minimal disruption violated: " + cell_label(cell));
        return report;
    });
}

ExperimentReport run_experiment(Experiment experiment, const ExperimentConfig& config) {
    switch (experiment) {
    case Experiment::timing: return run_timing(config);
    case Experiment::robustness: return run_robustness(config);
    case Experiment::uniformity: return run_uniformity(config);
    case Experiment::remap: return run_remap(config);
    }
    throw std::invalid_argument("unknown experiment");
}

} // namespace hdhash

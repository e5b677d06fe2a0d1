#include "hdhash/emulator.hpp"
#include "hdhash/hash.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

namespace hdhash {
namespace {

ExperimentConfig small(Experiment e, std::vector<StrategyKind> strategies, std::vector<std::size_t> servers) {
    auto c = ExperimentConfig::defaults(e);
    c.strategies = std::move(strategies);
    c.servers = std::move(servers);
    c.requests = 2000;
    c.n = 1024;
    c.dim = 4096;
    c.seeds = {1, 2, 3};
    return c;
}

std::vector<ReportRow> without_latency(const ExperimentReport& r) {
    std::vector<ReportRow> out;
    for (const auto& row : r.rows)
        if (row.metric != "latency_ns")
            out.push_back(row);
    return out;
}

bool same_rows(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.strategy != y.strategy || x.servers != y.servers || x.noise_bits != y.noise_bits ||
            x.burst != y.burst || x.seed != y.seed || x.metric != y.metric || x.value != y.value)
            return false;
    }
    return true;
}

TEST(RequestKeys, DecimalHashOfIndex) {
    const auto keys = generate_request_keys(100, 9);
    ASSERT_EQ(keys.size(), 100U);
    for (std::size_t i = 0; i < keys.size(); ++i)
        EXPECT_EQ(keys[i].bytes(), std::to_string(hash64(std::to_string(i), 9)));
    std::set<std::string> distinct;
    for (const auto& k : generate_request_keys(10000, 1))
        distinct.insert(k.bytes());
    EXPECT_EQ(distinct.size(), 10000U);
    EXPECT_EQ(server_name(3), "server-3");
}

TEST(RequestStream, ServersThenRequests) {
    const auto s = RequestStream::with_servers(3, 5, 7);
    ASSERT_EQ(s.events().size(), 8U);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(s.events()[i].kind, Event::Kind::join);
        EXPECT_EQ(s.events()[i].id, server_name(i + 1));
    }
    EXPECT_EQ(s.request_count(), 5U);
    EXPECT_NO_THROW(s.validate());
}

TEST(RequestStream, ChurnIsValidAndDeterministic) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = RequestStream::with_churn(4, 500, 40, seed);
        const auto b = RequestStream::with_churn(4, 500, 40, seed);
        EXPECT_NO_THROW(a.validate());
        EXPECT_EQ(a.request_count(), 500U);
        EXPECT_EQ(a.events().size(), 4U + 500U + 40U);
        ASSERT_EQ(a.events().size(), b.events().size());
        for (std::size_t i = 0; i < a.events().size(); ++i) {
            EXPECT_EQ(a.events()[i].kind, b.events()[i].kind);
            EXPECT_EQ(a.events()[i].id, b.events()[i].id);
        }
    }
}

TEST(HashTableModule, MatchesManualReplayForEveryBatchSize) {
    const auto stream = RequestStream::with_churn(6, 3000, 30, 11);
    for (const auto kind : {StrategyKind::modular, StrategyKind::consistent, StrategyKind::rendezvous,
                            StrategyKind::hd}) {
        TableOptions o;
        o.hd = HdTableConfig{.n = 512, .dim = 2048, .seed = 3};
        auto manual = make_table(kind, o);
        std::vector<ServerId> expected;
        for (const auto& e : stream.events()) {
            if (e.kind == Event::Kind::join)
                manual->join(ServerId(e.id));
            else if (e.kind == Event::Kind::leave)
                manual->leave(ServerId(e.id));
            else
                expected.push_back(manual->lookup(RequestId(e.id)));
        }
        for (const std::size_t batch : {1, 7, 256, 5000}) {
            auto table = make_table(kind, o);
            const auto map = HashTableModule(*table, batch).run(stream);
            ASSERT_EQ(map.size(), expected.size());
            for (std::size_t i = 0; i < map.size(); ++i)
                ASSERT_EQ(map[i].server, expected[i]) << to_string(kind) << " batch " << batch;
        }
    }
}

TEST(Defaults, PerExperiment) {
    const auto r = ExperimentConfig::defaults(Experiment::robustness);
    EXPECT_EQ(r.servers, (std::vector<std::size_t>{64, 128, 256, 512}));
    EXPECT_EQ(r.noise.size(), 11U);
    EXPECT_EQ(r.seeds, (std::vector<std::uint64_t>{1, 2, 3, 4, 5}));
    EXPECT_EQ(r.dim, 10000U);
    EXPECT_EQ(r.n, 8192U);
    EXPECT_EQ(r.requests, 10000U);
    EXPECT_EQ(r.burst, 1U);
    const auto t = ExperimentConfig::defaults(Experiment::timing);
    EXPECT_EQ(t.servers.front(), 2U);
    EXPECT_EQ(t.servers.back(), 2048U);
    EXPECT_EQ(t.strategies.size(), 4U);
    for (const auto e : {Experiment::timing, Experiment::robustness, Experiment::uniformity, Experiment::remap})
        EXPECT_NO_THROW(ExperimentConfig::defaults(e).validate(e));
}

TEST(Defaults, ValidationErrors) {
    auto c = ExperimentConfig::defaults(Experiment::robustness);
    c.requests = 0;
    EXPECT_THROW(c.validate(Experiment::robustness), std::invalid_argument);
    c = ExperimentConfig::defaults(Experiment::robustness);
    c.seeds.clear();
    EXPECT_THROW(c.validate(Experiment::robustness), std::invalid_argument);
    c = ExperimentConfig::defaults(Experiment::robustness);
    c.burst = 4;
    EXPECT_THROW(c.validate(Experiment::robustness), std::invalid_argument);
    c.noise = {0, 4, 8};
    EXPECT_NO_THROW(c.validate(Experiment::robustness));
    c.servers = {8192};
    EXPECT_THROW(c.validate(Experiment::robustness), std::invalid_argument);
}

TEST(ApplyNoise, BurstsAndIndependentFlips) {
    std::vector<std::uint64_t> words(16, 0);
    CorruptionSurface s;
    s.add_words(words, 1024);
    Rng rng(3);
    apply_noise(s, 12, 4, rng);
    std::size_t ones = 0;
    for (const auto w : words)
        ones += static_cast<std::size_t>(std::popcount(w));
    EXPECT_LE(ones, 12U);  // bursts may overlap
    EXPECT_GE(ones, 4U);
    EXPECT_THROW(apply_noise(s, 6, 4, rng), std::invalid_argument);
    std::fill(words.begin(), words.end(), 0);
    apply_noise(s, 10, 1, rng);
    ones = 0;
    for (const auto w : words)
        ones += static_cast<std::size_t>(std::popcount(w));
    EXPECT_EQ(ones, 10U);
}

TEST(Robustness, CleanLevelIsExactAndReportIsDeterministic) {
    auto c = small(Experiment::robustness,
                   {StrategyKind::consistent, StrategyKind::rendezvous, StrategyKind::hd}, {16, 64});
    c.noise = {0, 5, 10};
    const auto a = run_robustness(c);
    c.jobs = 3;
    const auto b = run_robustness(c);
    EXPECT_TRUE(a.violations.empty());
    EXPECT_TRUE(same_rows(a.rows, b.rows));
    for (const auto& row : a.rows) {
        if (row.metric == "mismatch_rate") {
            EXPECT_GE(row.value, 0.0);
            EXPECT_LE(row.value, 1.0);
            if (row.noise_bits == 0)
                EXPECT_EQ(row.value, 0.0);
        }
        if (row.metric == "flipped_bits")
            EXPECT_EQ(row.value, static_cast<double>(row.noise_bits));
    }
    EXPECT_EQ(a.values("hd", 64, 10, "mismatch_rate").size(), 3U);
}

TEST(Uniformity, ChiSquaredRowsAndNoiseLevels) {
    auto c = small(Experiment::uniformity, {StrategyKind::rendezvous, StrategyKind::hd}, {32});
    c.noise = {0, 10};
    const auto r = run_uniformity(c);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_EQ(r.values("rendezvous", 32, 0, "chi_squared").size(), 3U);
    EXPECT_EQ(r.values("hd", 32, 10, "chi_squared").size(), 3U);
    for (const auto& row : r.rows)
        EXPECT_GE(row.value, 0.0);
}

TEST(Remap, MinimalDisruptionHoldsAndModularScatters) {
    auto c = small(Experiment::remap, {StrategyKind::modular, StrategyKind::consistent, StrategyKind::rendezvous,
                                       StrategyKind::hd},
                   {8, 64});
    const auto r = run_remap(c);
    EXPECT_TRUE(r.violations.empty());
    for (const auto* s : {"consistent", "rendezvous", "hd"})
        for (const std::size_t k : {8, 64}) {
            for (const double v : r.values(s, k, 0, "leave_violations"))
                EXPECT_EQ(v, 0.0);
            const auto share = r.values(s, k, 0, "departed_share");
            const auto leave = r.values(s, k, 0, "remap_leave");
            ASSERT_EQ(share.size(), leave.size());
            for (std::size_t i = 0; i < share.size(); ++i)
                EXPECT_EQ(share[i], leave[i]);
        }
}

TEST(Remap, ModularShrinkRemapsMostRequests) {
    auto c = small(Experiment::remap, {StrategyKind::modular}, {256});
    for (const double v : run_remap(c).values("modular", 256, 0, "remap_leave"))
        EXPECT_GT(v, 0.5);
}

// Independent oracle for the HD join: with one bit per circular step,
// similarity ranks stored servers by circular index distance, so the newcomer
// captures the indices of its Voronoi arc. The remapped fraction should match
// the share of request indices inside that arc.
TEST(Remap, HdJoinMatchesCapturedArc) {
    constexpr std::size_t k = 128;
    auto c = ExperimentConfig::defaults(Experiment::remap);
    c.strategies = {StrategyKind::hd};
    c.servers = {k};
    c.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto report = run_remap(c);
    const auto joins = report.values("hd", k, 0, "remap_join");
    ASSERT_EQ(joins.size(), 10U);

    const std::size_t n = c.n;
    ASSERT_EQ(c.dim / n, 1U);
    const auto circ = [n](std::size_t a, std::size_t b) {
        const std::size_t d = a > b ? a - b : b - a;
        return std::min(d, n - d);
    };
    for (std::size_t s = 0; s < joins.size(); ++s) {
        const auto seeds = CellSeeds::derive(c.seeds[s]);
        std::vector<std::pair<std::string, std::size_t>> servers;
        for (std::size_t i = 1; i <= k + 1; ++i)
            servers.emplace_back(server_name(i), hash64(server_name(i), seeds.hash) % n);
        std::sort(servers.begin(), servers.end());
        const std::string fresh = server_name(k + 1);
        auto owner = [&](std::size_t idx, bool with_fresh) {
            const std::pair<std::string, std::size_t>* best = nullptr;
            for (const auto& sv : servers) {
                if (!with_fresh && sv.first == fresh)
                    continue;
                if (!best || circ(idx, sv.second) < circ(idx, best->second))
                    best = &sv;
            }
            return best->first;
        };
        std::vector<bool> captured(n);
        for (std::size_t idx = 0; idx < n; ++idx)
            captured[idx] = owner(idx, false) != owner(idx, true);
        std::size_t moved = 0;
        for (const auto& key : generate_request_keys(c.requests, seeds.stream))
            moved += captured[hash64(key.bytes(), seeds.hash) % n] ? 1 : 0;
        EXPECT_DOUBLE_EQ(joins[s], static_cast<double>(moved) / static_cast<double>(c.requests));
    }
    const double m = median(joins);
    EXPECT_GT(m, 1.0 / (3.0 * (k + 1)));
    EXPECT_LT(m, 3.0 / (k + 1));
}

TEST(Timing, LatencyRowsArePositive) {
    auto c = small(Experiment::timing, {StrategyKind::consistent, StrategyKind::rendezvous}, {2, 16});
    c.seeds = {1};
    const auto r = run_timing(c);
    EXPECT_EQ(r.rows.size(), 4U);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.metric, "latency_ns");
        EXPECT_GT(row.value, 0.0);
    }
}

TEST(Report, CsvSchemaAndValueFormat) {
    ExperimentReport r;
    r.rows.push_back(ReportRow{"hd", 64, 10, 1, 3, "mismatch_rate", 0.0036});
    std::ostringstream out;
    write_csv(out, r);
    EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\nhd,64,10,1,3,mismatch_rate,0.0036\n");
    EXPECT_EQ(format_value(0.1), "0.1");
    EXPECT_EQ(format_value(0.0), "0");
    EXPECT_EQ(std::stod(format_value(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, SummaryOneLinePerCell) {
    auto c = small(Experiment::robustness, {StrategyKind::consistent, StrategyKind::hd}, {16, 32});
    c.noise = {0, 2};
    c.seeds = {1};
    EXPECT_EQ(summary_lines(run_robustness(c)).size(), 4U);
}

} // namespace
} // namespace hdhash

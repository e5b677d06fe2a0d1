// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include "hdhash/basis.hpp"
#include "hdhash/emulator.hpp"
#include "hdhash/hash.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hdhash;

namespace {

// Pinned parameters and tolerances.
constexpr std::size_t kDim = 10000;
constexpr std::size_t kCircular = 8192;
constexpr std::size_t kRequests = 10000;
constexpr std::size_t kRobustServers = 512;
constexpr std::size_t kBurstBits = 10;
constexpr std::size_t kIndependentFlips = 10;
constexpr double kRendezvousBandLow = 0.01;
constexpr double kRendezvousBandHigh = 0.08;
constexpr std::size_t kUniformServers = 64;
constexpr double kChiSquaredMass = 0.99;
constexpr std::size_t kProfileSize = 12;
constexpr double kOppositeMax = 0.1;
constexpr double kNeighbourSymmetry = 0.05;
constexpr double kMonotoneSlack = 0.05;
constexpr double kModularRemapMin = 0.5;
constexpr double kRendezvousRatioMin = 100.0;
constexpr double kConsistentRatioMax = 10.0;
constexpr double kHdBurstSeconds = 60.0;
constexpr double kTimingSweepSeconds = 600.0;

const std::vector<std::uint64_t> kFiveSeeds{1, 2, 3, 4, 5};
const std::vector<std::uint64_t> kTenSeeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %-22s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string num(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (const double v : values)
        out += (out.empty() ? "" : " ") + num(v);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ExperimentConfig base(Experiment e) {
    auto c = ExperimentConfig::defaults(e);
    c.dim = kDim;
    c.n = kCircular;
    c.requests = kRequests;
    return c;
}

void hd_burst_robustness() {
    auto c = base(Experiment::robustness);
    c.strategies = {StrategyKind::hd};
    c.servers = {kRobustServers};
    c.noise = {kBurstBits};
    c.burst = kBurstBits;
    c.seeds = kFiveSeeds;
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_robustness(c);
    const double elapsed = seconds_since(start);
    const auto rates = r.values("hd", kRobustServers, kBurstBits, "mismatch_rate");
    const bool zero = rates.size() == c.seeds.size() &&
                      std::all_of(rates.begin(), rates.end(), [](double v) { return v == 0.0; });
    std::ostringstream d;
    d << "hd k=512 one 10-bit burst, mismatch per seed [" << join(rates) << "] (need all 0), " << elapsed
      << " s (need < " << kHdBurstSeconds << ")";
    report("hd-burst-robustness", zero && elapsed < kHdBurstSeconds && r.violations.empty(), d.str());
}

void mismatch_ordering_and_degradation() {
    auto c = base(Experiment::robustness);
    c.strategies = {StrategyKind::consistent, StrategyKind::rendezvous, StrategyKind::hd};
    c.servers = {kRobustServers};
    c.noise = {0, 2, 4, 6, 8, 10};
    c.seeds = kFiveSeeds;
    const auto r = run_robustness(c);

    auto med = [&](const char* s, std::size_t level) {
        return median(r.values(s, kRobustServers, level, "mismatch_rate"));
    };
    const double hd = med("hd", kIndependentFlips);
    const double rv = med("rendezvous", kIndependentFlips);
    const double cs = med("consistent", kIndependentFlips);
    const bool ordering = hd == 0.0 && hd < rv && rv < cs;
    const bool band = rv >= kRendezvousBandLow && rv <= kRendezvousBandHigh;
    std::ostringstream d;
    d << "k=512 10 flips, medians hd=" << num(hd) << " rendezvous=" << num(rv)
      << " consistent=" << num(cs) << " (need 0 == hd < rendezvous < consistent, rendezvous in ["
      << kRendezvousBandLow << ", " << kRendezvousBandHigh << "]: ordering " << (ordering ? "ok" : "violated")
      << ", band " << (band ? "ok" : "violated") << ")";
    report("mismatch-ordering", ordering && band, d.str());

    bool monotone = true;
    std::ostringstream m;
    for (const char* s : {"consistent", "rendezvous"}) {
        std::vector<double> medians;
        for (const auto level : c.noise)
            medians.push_back(med(s, level));
        for (std::size_t i = 1; i < medians.size(); ++i)
            monotone = monotone && medians[i] >= medians[i - 1];
        m << s << " [" << join(medians) << "] ";
    }
    // Clean level across every strategy, modular included.
    auto clean = base(Experiment::robustness);
    clean.strategies = {StrategyKind::modular};
    clean.servers = {kRobustServers};
    clean.noise = {0};
    clean.seeds = kFiveSeeds;
    const auto rc = run_robustness(clean);
    bool zero_at_clean = r.violations.empty() && rc.violations.empty();
    for (const char* s : {"consistent", "rendezvous", "hd"})
        for (const double v : r.values(s, kRobustServers, 0, "mismatch_rate"))
            zero_at_clean = zero_at_clean && v == 0.0;
    for (const double v : rc.values("modular", kRobustServers, 0, "mismatch_rate"))
        zero_at_clean = zero_at_clean && v == 0.0;
    m << "over noise 0,2,..,10 (need non-decreasing); noise 0 zero for all strategies: "
      << (zero_at_clean ? "yes" : "no");
    report("monotone-degradation", monotone && zero_at_clean, m.str());
}

void uniformity() {
    auto c = base(Experiment::uniformity);
    c.strategies = {StrategyKind::consistent, StrategyKind::rendezvous, StrategyKind::hd};
    c.servers = {kUniformServers};
    c.noise = {0, kIndependentFlips};
    c.seeds = kTenSeeds;
    const auto r = run_uniformity(c);

    const auto hd0 = r.values("hd", kUniformServers, 0, "chi_squared");
    const auto hd10 = r.values("hd", kUniformServers, kIndependentFlips, "chi_squared");
    const double hd_med = median(hd0);
    const double cs_med = median(r.values("consistent", kUniformServers, 0, "chi_squared"));
    const bool hd_better = hd_med < cs_med;

    // Bit-identical assignments, checked directly as a zero mismatch rate.
    auto rob = base(Experiment::robustness);
    rob.strategies = {StrategyKind::hd};
    rob.servers = {kUniformServers};
    rob.noise = {kIndependentFlips};
    rob.seeds = kTenSeeds;
    const auto mismatch = run_robustness(rob).values("hd", kUniformServers, kIndependentFlips, "mismatch_rate");
    std::size_t identical = 0;
    for (std::size_t i = 0; i < hd0.size(); ++i)
        identical += hd0[i] == hd10[i] && mismatch[i] == 0.0 ? 1 : 0;
    const bool hd_intact = identical == hd0.size();

    const boost::math::chi_squared dist(static_cast<double>(kUniformServers - 1));
    const double lo = boost::math::quantile(dist, (1.0 - kChiSquaredMass) / 2.0);
    const double hi = boost::math::quantile(dist, 1.0 - (1.0 - kChiSquaredMass) / 2.0);
    const double rv_med = median(r.values("rendezvous", kUniformServers, 0, "chi_squared"));
    const bool rv_band = rv_med >= lo && rv_med <= hi;

    std::ostringstream d;
    d << "k=64 medians hd=" << num(hd_med) << " consistent=" << num(cs_med) << " (need hd < consistent: "
      << (hd_better ? "ok" : "violated") << "); hd identical at noise 0 and 10 in " << identical << "/" << hd0.size()
      << " seeds (need all; hd noise-10 mismatch [" << join(mismatch) << "]); rendezvous median "
      << num(rv_med) << " in 99% band [" << lo << ", " << hi << "]: " << (rv_band ? "ok" : "violated");
    report("uniformity", hd_better && hd_intact && rv_band && r.violations.empty(), d.str());
}

void circular_profile() {
    bool ok = true;
    double worst_opposite = 0.0;
    double worst_neighbour = 0.0;
    double worst_rise = -1.0;
    bool level_ok = true;
    for (const auto seed : kTenSeeds) {
        const SimilarityProfile p(generate_circular(kProfileSize, kDim, seed));
        worst_opposite = std::max(worst_opposite, std::abs(p.at(0, 6)));
        worst_neighbour = std::max(worst_neighbour, std::abs(p.at(0, 1) - p.at(0, kProfileSize - 1)));
        for (std::size_t j = 1; j <= 6; ++j)
            worst_rise = std::max(worst_rise, p.at(0, j) - p.at(0, j - 1));

        const SimilarityProfile level(generate_level_set(kProfileSize, kDim, seed));
        const double corner = level.at(0, kProfileSize - 1);
        for (std::size_t i = 0; i < kProfileSize; ++i)
            for (std::size_t j = 0; j < kProfileSize; ++j) {
                const bool is_corner = (i == 0 && j == kProfileSize - 1) || (j == 0 && i == kProfileSize - 1);
                if (!is_corner && level.at(i, j) <= corner)
                    level_ok = false;
            }
    }
    ok = worst_opposite <= kOppositeMax && worst_neighbour <= kNeighbourSymmetry && worst_rise <= kMonotoneSlack &&
         level_ok;
    std::ostringstream d;
    d << "n=12 over 10 seeds: max |sim(c1,c7)|=" << num(worst_opposite) << " (<= 0.1), max |sim(c1,c2)-sim(c1,c12)|="
      << num(worst_neighbour) << " (<= 0.05), max row-1 rise=" << num(worst_rise)
      << " (<= 0.05), level minimum at (first,last): " << (level_ok ? "yes" : "no");
    report("circular-profile", ok, d.str());
}

void minimal_disruption() {
    auto c = base(Experiment::remap);
    c.strategies = {StrategyKind::modular, StrategyKind::consistent, StrategyKind::rendezvous, StrategyKind::hd};
    c.servers = {8, 64, 256};
    c.seeds = kFiveSeeds;
    const auto r = run_remap(c);
    double violations = 0;
    std::size_t cells = 0;
    for (const char* s : {"consistent", "rendezvous", "hd"})
        for (const auto k : c.servers)
            for (const double v : r.values(s, k, 0, "leave_violations")) {
                violations += v;
                ++cells;
            }
    const auto modular = r.values("modular", 256, 0, "remap_join");
    const bool scatter = !modular.empty() && std::all_of(modular.begin(), modular.end(),
                                                         [](double v) { return v > kModularRemapMin; });
    std::ostringstream d;
    d << "leave violations over " << cells << " cells (k=8,64,256 x 5 seeds): " << violations
      << " (need 0); modular 256->257 remap [" << join(modular) << "] (need > 0.5)";
    report("minimal-disruption", violations == 0 && cells == 45 && scatter, d.str());
}

void scaling_shape() {
    const auto c = ExperimentConfig::defaults(Experiment::timing);
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_timing(c);
    const double elapsed = seconds_since(start);
    auto med = [&](const char* s, std::size_t k) { return median(r.values(s, k, 0, "latency_ns")); };
    const double rv = med("rendezvous", 2048) / med("rendezvous", 2);
    const double cs = med("consistent", 2048) / med("consistent", 2);
    std::ostringstream d;
    d << "latency ratio k=2048/k=2: rendezvous " << rv << " (need >= 100), consistent " << cs
      << " (need <= 10); full sweep " << elapsed << " s (need < " << kTimingSweepSeconds << ")";
    report("scaling-shape", rv >= kRendezvousRatioMin && cs <= kConsistentRatioMax && elapsed < kTimingSweepSeconds &&
                                r.violations.empty(),
           d.str());
}

// Naive bipolar dot product, bit by bit.
long bipolar_dot(const Hypervector& a, const Hypervector& b) {
    long dot = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        dot += a.bit(i) == b.bit(i) ? 1 : -1;
    return dot;
}

void toy_oracle() {
    std::size_t configurations = 0;
    std::size_t lookups = 0;
    std::size_t mismatches = 0;
    for (std::size_t n = 2; n <= 16; ++n)
        for (const std::size_t d : {16, 32, 48, 64}) {
            if (d < (n % 2 == 0 ? n : 2 * n))
                continue;
            const std::uint64_t seed = n * 1000 + d;
            const auto set = generate_circular(n, d, seed);
            for (std::size_t k = 1; k <= std::min<std::size_t>(8, n - 1); ++k) {
                HdTable table(HdTableConfig{.n = n, .dim = d, .seed = seed}, seed);
                std::vector<std::string> ids;
                for (std::size_t i = 1; i <= k; ++i) {
                    ids.push_back(server_name(i));
                    table.join(ServerId(ids.back()));
                }
                ++configurations;
                for (const auto& key : generate_request_keys(1000, seed + k)) {
                    const auto& q = set[hash64(key.bytes(), seed) % n];
                    const std::string* best = nullptr;
                    long best_dot = 0;
                    for (const auto& id : ids) {
                        const long dot = bipolar_dot(q, set[hash64(id, seed) % n]);
                        if (!best || dot > best_dot || (dot == best_dot && id < *best)) {
                            best = &id;
                            best_dot = dot;
                        }
                    }
                    ++lookups;
                    mismatches += table.lookup(key).bytes() == *best ? 0 : 1;
                }
            }
        }
    std::ostringstream d;
    d << configurations << " toy tables (n<=16, d<=64, k<=8), " << lookups << " lookups, " << mismatches
      << " disagreements with brute force (need 0)";
    report("toy-oracle", mismatches == 0 && configurations > 0, d.str());
}

} // namespace

int main() {
    const std::vector<std::function<void()>> criteria{hd_burst_robustness, mismatch_ordering_and_degradation,
                                                      uniformity,          circular_profile,
                                                      minimal_disruption,  scaling_shape,
                                                      toy_oracle};
    for (const auto& criterion : criteria) {
        try {
            criterion();
        } catch (const std::exception& e) {
            report("error", false, e.what());
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

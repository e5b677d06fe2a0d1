// hdhash: run hashing experiments and dump basis similarity profiles as CSV.

#include "hdhash/basis.hpp"
#include "hdhash/config.hpp"
#include "hdhash/emulator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct BenchOptions {
    std::string config_path;
    std::string output = "-";
    std::optional<std::uint64_t> seed;
    std::string strategy_filter;
};

struct ProfileOptions {
    std::string kind = "circular";
    std::size_t n = 12;
    std::size_t d = hdhash::kDefaultDimension;
    std::uint64_t seed = 1;
    std::string output = "-";
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs `write` against the requested destination ("-" is stdout).
template <typename Fn>
void with_output(const std::string& path, Fn&& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write output file '" + path + "'");
    write(out);
    if (!out)
        throw UsageError("failed writing output file '" + path + "'");
}

hdhash::ExperimentConfig load_config(const BenchOptions& opts, hdhash::Experiment experiment) {
    auto config = opts.config_path.empty() ? hdhash::ExperimentConfig::defaults(experiment)
                                           : hdhash::parse_config(opts.config_path, experiment);
    if (opts.seed)
        config.seeds = {*opts.seed};
    if (!opts.strategy_filter.empty()) {
        std::vector<hdhash::StrategyKind> wanted;
        std::stringstream list(opts.strategy_filter);
        std::string item;
        while (std::getline(list, item, ','))
            wanted.push_back(hdhash::parse_strategy(item));
        config.strategies = wanted;
    }
    config.validate(experiment);
    return config;
}

int run_bench(const BenchOptions& opts, hdhash::Experiment experiment) {
    const auto config = load_config(opts, experiment);
    const auto report = hdhash::run_experiment(experiment, config);
    with_output(opts.output, [&](std::ostream& out) { hdhash::write_csv(out, report); });

    std::ostream& log = opts.output == "-" ? std::cerr : std::cout;
    for (const auto& line : hdhash::summary_lines(report))
        log << line << '\n';
    for (const auto& v : report.violations)
        std::cerr << "invariant violation: " << v << '\n';
    return report.violations.empty() ? kExitOk : kExitViolation;
}

int run_profile(const ProfileOptions& opts) {
    const auto set = hdhash::generate_set(hdhash::parse_basis_kind(opts.kind), opts.n, opts.d, opts.seed);
    const hdhash::SimilarityProfile profile(set);
    with_output(opts.output, [&](std::ostream& out) {
        out << "i,j,similarity\n";
        for (std::size_t i = 0; i < profile.size(); ++i)
            for (std::size_t j = 0; j < profile.size(); ++j)
                out << i + 1 << ',' << j + 1 << ',' << hdhash::format_value(profile.at(i, j)) << '\n';
    });
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperdimensional, consistent, rendezvous and modular hashing experiments"};
    app.require_subcommand(1);

    struct Bench {
        const char* name;
        const char* help;
        hdhash::Experiment experiment;
    };
    const Bench benches[] = {
        {"bench-time", "Mean lookup latency versus server count", hdhash::Experiment::timing},
        {"bench-robustness", "Mismatch rate under stored-state bit errors", hdhash::Experiment::robustness},
        {"bench-uniformity", "Chi-squared uniformity of request distribution", hdhash::Experiment::uniformity},
        {"bench-remap", "Fraction of requests remapped on leave and join", hdhash::Experiment::remap},
    };

    BenchOptions bench_opts;
    std::optional<hdhash::Experiment> selected;
    for (const auto& b : benches) {
        auto* sub = app.add_subcommand(b.name, b.help);
        sub->add_option("-c,--config", bench_opts.config_path, "Config file of 'key = value' lines");
        sub->add_option("-o,--output", bench_opts.output, "CSV output path ('-' for stdout)");
        sub->add_option("--seed", bench_opts.seed, "Run a single replication seed");
        sub->add_option("--strategy", bench_opts.strategy_filter,
                        "Comma-separated strategies (modular, consistent, rendezvous, hd)");
        sub->callback([&selected, e = b.experiment] { selected = e; });
    }

    ProfileOptions profile_opts;
    bool profile = false;
    auto* prof = app.add_subcommand("profile-basis", "Pairwise similarity profile of a basis set");
    prof->add_option("--kind", profile_opts.kind, "random, level or circular")->capture_default_str();
    prof->add_option("--n", profile_opts.n, "Set cardinality")->capture_default_str();
    prof->add_option("--d", profile_opts.d, "Dimension")->capture_default_str();
    prof->add_option("--seed", profile_opts.seed, "Generator seed")->capture_default_str();
    prof->add_option("-o,--output", profile_opts.output, "CSV output path ('-' for stdout)");
    prof->callback([&profile] { profile = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (profile)
            return run_profile(profile_opts);
        return run_bench(bench_opts, *selected);
    } catch (const hdhash::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
}

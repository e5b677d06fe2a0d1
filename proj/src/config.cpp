#include "hdhash/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace hdhash {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_uint(std::string_view text, std::string_view key) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("invalid integer '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return value;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text, std::string_view key) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (item.empty())
            throw ConfigError("empty list item for key '" + std::string(key) + "'");
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const auto lo = parse_uint(item.substr(0, dots), key);
            const auto hi = parse_uint(item.substr(dots + 2), key);
            if (hi < lo)
                throw ConfigError("descending range '" + std::string(item) + "' for key '" + std::string(key) + "'");
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v);
        } else {
            out.push_back(parse_uint(item, key));
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
std::vector<T> narrow(const std::vector<std::uint64_t>& values) {
    return std::vector<T>(values.begin(), values.end());
}

} // namespace

ExperimentConfig parse_config_text(std::string_view text, Experiment experiment) {
    ExperimentConfig config = ExperimentConfig::defaults(experiment);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");

        if (key == "strategies") {
            config.strategies.clear();
            std::size_t start = 0;
            while (true) {
                const auto comma = value.find(',', start);
                const auto item = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
                try {
                    config.strategies.push_back(parse_strategy(item));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
                }
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
        } else if (key == "servers") {
            config.servers = narrow<std::size_t>(parse_uint_list(value, key));
        } else if (key == "requests") {
            config.requests = parse_uint(value, key);
        } else if (key == "d") {
            config.dim = parse_uint(value, key);
        } else if (key == "n") {
            config.n = parse_uint(value, key);
        } else if (key == "noise") {
            config.noise = narrow<std::size_t>(parse_uint_list(value, key));
        } else if (key == "burst") {
            config.burst = parse_uint(value, key);
        } else if (key == "seeds") {
            config.seeds = parse_uint_list(value, key);
        } else if (key == "batch") {
            config.batch = parse_uint(value, key);
        } else if (key == "jobs") {
            config.jobs = parse_uint(value, key);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    try {
        config.validate(experiment);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path, Experiment experiment) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), experiment);
}

} // namespace hdhash

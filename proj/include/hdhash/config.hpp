#pragma once

#include "hdhash/emulator.hpp"

#include <filesystem>
#include <stdexcept>
#include <string_view>

namespace hdhash {

/// Malformed line, unknown key, or out-of-range value in a config file.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses `key = value` lines over the defaults of `experiment`.
///
/// Blank lines and lines starting with '#' are skipped. List values are comma
/// separated; an item may be an inclusive range "a..b".
///
/// Keys: strategies, servers, requests, d, n, noise, burst, seeds, batch, jobs.
ExperimentConfig parse_config_text(std::string_view text, Experiment experiment);

/// Reads and parses a config file. Throws ConfigError if it cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& path, Experiment experiment);

} // namespace hdhash

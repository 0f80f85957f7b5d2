#pragma once

#include <map>
#include <optional>
#include <string>

#include "marketgraph/translate.hpp"

namespace marketgraph {

enum class OutputMode { Table, Json };

const char* output_mode_name(OutputMode m);

/// Runtime settings shared by the CLI and the HTTP service. A config file is
/// plain key = value text, one pair per line; blank lines and lines starting
/// with '#' are skipped. Keys:
///
///   data_dir          directory fixture/ingest files live in
///   snapshot_path     where `ingest` writes and the other commands read
///   backend_url       optional external query generator endpoint
///   backend_timeout_s per-call deadline for that endpoint, default 30
///   output            table | json
///   log_level         debug | info | warn | error
///
/// Environment variables override file values; the variable for each key is
/// MARKETGRAPH_ followed by the upper-cased key (MARKETGRAPH_DATA_DIR, ...).
/// Command-line flags override both.
struct AppConfig {
    std::string data_dir = "data";
    std::string snapshot_path = "market.snapshot";
    std::optional<BackendConfig> backend;  // absent: template translator only
    OutputMode output = OutputMode::Table;
    std::string log_level = "info";
};

/// Throws ConfigError on unknown keys, malformed lines, empty values, a
/// non-integer or sub-second timeout, a timeout without a backend url, or an
/// unrecognized output mode / log level.
AppConfig parse_config_text(const std::string& text);

/// Reads and parses one file. Throws IoFailure when it cannot be read.
AppConfig load_config_file(const std::string& path);

/// Applies MARKETGRAPH_* entries from `env` over `config`. Unrelated keys
/// are ignored so a full environment snapshot can be passed as-is.
void apply_env_overrides(AppConfig& config,
                         const std::map<std::string, std::string>& env);

/// The MARKETGRAPH_* variables present in this process's environment.
std::map<std::string, std::string> process_env();

/// Re-checks the struct-level invariants (non-empty paths, timeout >= 1,
/// known log level); parse and override paths call it, and callers mutating
/// the struct directly should too. Throws ConfigError.
void validate(const AppConfig& config);

}  // namespace marketgraph

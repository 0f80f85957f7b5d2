#include "marketgraph/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "marketgraph/errors.hpp"

namespace marketgraph {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

OutputMode parse_output_mode(const std::string& value) {
    if (value == "table") return OutputMode::Table;
    if (value == "json") return OutputMode::Json;
    throw ConfigError("output must be table or json, got " + value);
}

bool known_log_level(const std::string& level) {
    return level == "debug" || level == "info" || level == "warn" ||
           level == "error";
}

int parse_timeout(const std::string& value, const std::string& where) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(where + " must be an integer, got " + value);
    return v;
}

void set_backend_url(AppConfig& config, const std::string& url) {
    int keep = config.backend ? config.backend->timeout_s : 30;
    config.backend = BackendConfig{url, keep};
}

void set_backend_timeout(AppConfig& config, int timeout_s,
                         const std::string& where) {
    if (!config.backend)
        throw ConfigError(where + " requires a backend url");
    config.backend->timeout_s = timeout_s;
}

}  // namespace

const char* output_mode_name(OutputMode m) {
    return m == OutputMode::Table ? "table" : "json";
}

void validate(const AppConfig& config) {
    if (config.data_dir.empty())
        throw ConfigError("data_dir must not be empty");
    if (config.snapshot_path.empty())
        throw ConfigError("snapshot_path must not be empty");
    if (!known_log_level(config.log_level))
        throw ConfigError("log_level must be debug, info, warn or error, got " +
                          config.log_level);
    if (config.backend) {
        if (config.backend->url.empty())
            throw ConfigError("backend url must not be empty");
        if (config.backend->timeout_s < 1)
            throw ConfigError("backend timeout must be at least 1 second, got " +
                              std::to_string(config.backend->timeout_s));
    }
}

AppConfig parse_config_text(const std::string& text) {
    AppConfig config;
    std::optional<int> pending_timeout;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::string where = "config line " + std::to_string(line_no);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key = value, got " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(where + ": expected key = value, got " + line);
        if (value.empty())
            throw ConfigError(where + ": empty value for " + key);
        if (key == "data_dir") {
            config.data_dir = value;
        } else if (key == "snapshot_path") {
            config.snapshot_path = value;
        } else if (key == "output") {
            config.output = parse_output_mode(value);
        } else if (key == "log_level") {
            config.log_level = value;
        } else if (key == "backend_url") {
            set_backend_url(config, value);
        } else if (key == "backend_timeout_s") {
            pending_timeout = parse_timeout(value, where + ": backend_timeout_s");
        } else {
            throw ConfigError(where + ": unknown key " + key);
        }
    }
    // timeout may appear before the url in the file, so settle it last
    if (pending_timeout)
        set_backend_timeout(config, *pending_timeout, "backend_timeout_s");
    validate(config);
    return config;
}

AppConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_env_overrides(AppConfig& config,
                         const std::map<std::string, std::string>& env) {
    auto get = [&](const char* name) -> std::optional<std::string> {
        auto it = env.find(name);
        if (it == env.end()) return std::nullopt;
        if (it->second.empty())
            throw ConfigError(std::string(name) + " must not be empty");
        return it->second;
    };
    if (auto v = get("MARKETGRAPH_DATA_DIR")) config.data_dir = *v;
    if (auto v = get("MARKETGRAPH_SNAPSHOT_PATH")) config.snapshot_path = *v;
    if (auto v = get("MARKETGRAPH_OUTPUT")) config.output = parse_output_mode(*v);
    if (auto v = get("MARKETGRAPH_LOG_LEVEL")) config.log_level = *v;
    if (auto v = get("MARKETGRAPH_BACKEND_URL")) set_backend_url(config, *v);
    if (auto v = get("MARKETGRAPH_BACKEND_TIMEOUT_S"))
        set_backend_timeout(config,
                            parse_timeout(*v, "MARKETGRAPH_BACKEND_TIMEOUT_S"),
                            "MARKETGRAPH_BACKEND_TIMEOUT_S");
    validate(config);
}

std::map<std::string, std::string> process_env() {
    static const std::array<const char*, 6> names = {
        "MARKETGRAPH_DATA_DIR",      "MARKETGRAPH_SNAPSHOT_PATH",
        "MARKETGRAPH_OUTPUT",        "MARKETGRAPH_LOG_LEVEL",
        "MARKETGRAPH_BACKEND_URL",   "MARKETGRAPH_BACKEND_TIMEOUT_S",
    };
    std::map<std::string, std::string> env;
    for (const char* name : names)
        if (const char* v = std::getenv(name)) env[name] = v;
    return env;
}

}  // namespace marketgraph

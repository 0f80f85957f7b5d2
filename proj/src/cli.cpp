#include "marketgraph/cli.hpp"

#include <cctype>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "marketgraph/config.hpp"
#include "marketgraph/errors.hpp"
#include "marketgraph/fixture.hpp"
#include "marketgraph/flows.hpp"
#include "marketgraph/http_service.hpp"
#include "marketgraph/ingest.hpp"
#include "marketgraph/snapshot.hpp"

namespace marketgraph {

namespace {

using nlohmann::json;

struct Logger {
    std::ostream& err;
    int min_rank = 1;  // debug 0, info 1, warn 2, error 3

    static int rank(const std::string& level) {
        if (level == "debug") return 0;
        if (level == "info") return 1;
        if (level == "warn") return 2;
        return 3;
    }
    void info(const std::string& msg) const {
        if (min_rank <= 1) err << msg << "\n";
    }
    void warn(const std::string& msg) const {
        if (min_rank <= 2) err << "warning: " << msg << "\n";
    }
};

void print_block(std::ostream& out, const std::string& text) {
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

PropertyGraph load_snapshot(const AppConfig& config) {
    return load(config.snapshot_path);
}

int cmd_ingest(const AppConfig& config, const Logger& log,
               const std::string& dir, std::ostream& out) {
    PropertyGraph g;
    IngestReport report = ingest_directory(g, SchemaCatalog::market(), dir);
    persist(g, config.snapshot_path);
    if (config.output == OutputMode::Json) {
        print_block(out, report.to_json());
    } else {
        out << "loaded " << report.loaded << "\n";
        out << "rejected " << report.rejected.size() << "\n";
        for (const auto& issue : report.rejected)
            out << "  " << issue.file << ":" << issue.line << " "
                << issue.reason << "\n";
        out << "warnings " << report.warnings.size() << "\n";
        for (const auto& issue : report.warnings)
            out << "  " << issue.file << ":" << issue.line << " "
                << issue.reason << "\n";
        out << "unresolved competitors " << report.unresolved_competitors.size()
            << "\n";
        for (const auto& miss : report.unresolved_competitors)
            out << "  " << miss << "\n";
    }
    log.info("wrote snapshot " + config.snapshot_path + " (" +
             std::to_string(g.node_count()) + " nodes, " +
             std::to_string(g.edge_count()) + " edges)");
    return 0;
}

int cmd_query(const AppConfig& config, const std::string& cypher,
              std::ostream& out) {
    PropertyGraph g = load_snapshot(config);
    ResultTable table = run_query_text(g, cypher);
    print_block(out, config.output == OutputMode::Json ? table.to_json()
                                                       : table.to_text());
    return 0;
}

int cmd_ask(const AppConfig& config, const Logger& log,
            const std::string& question, std::ostream& out,
            std::ostream& err) {
    PropertyGraph g = load_snapshot(config);
    AskFlowResult flow = run_ask_flow(g, SchemaCatalog::market(), question,
                                      config.backend, true);
    for (const auto& w : flow.warnings) log.warn(w);
    print_block(out, config.output == OutputMode::Json
                         ? report_to_json(flow.report)
                         : report_to_text(flow.report));
    if (flow.unsupported_reason) {
        err << "error: unsupported question: " << *flow.unsupported_reason
            << "\n";
        return 1;
    }
    return 0;
}

int cmd_fixture(const AppConfig& config, const std::string& spec_name,
                std::uint64_t seed, std::ostream& out) {
    if (spec_name != "demo")
        throw BadSpec("unknown fixture spec: " + spec_name + " (known: demo)");
    FixtureFiles files = generate_fixture(demo_spec(), seed);
    files.write(config.data_dir);
    std::filesystem::path dir(config.data_dir);
    std::vector<std::string> written = {
        (dir / "companies.csv").string(),
        (dir / "prices.csv").string(),
        (dir / "indicators.csv").string(),
        (dir / "statements.jsonl").string(),
    };
    if (config.output == OutputMode::Json) {
        json doc;
        doc["files"] = written;
        print_block(out, doc.dump(2));
    } else {
        for (const auto& path : written) out << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_schema(const AppConfig& config, std::ostream& out) {
    const SchemaCatalog& catalog = SchemaCatalog::market();
    print_block(out, config.output == OutputMode::Json ? catalog.schema_json()
                                                       : catalog.schema_text());
    return 0;
}

int cmd_stats(const AppConfig& config, std::ostream& out) {
    PropertyGraph g = load_snapshot(config);
    std::map<std::string, std::size_t> labels;
    for (const auto& [id, node] : g.nodes())
        for (const auto& label : node.labels) ++labels[label];
    std::map<std::string, std::size_t> rels;
    for (const auto& [id, edge] : g.edges()) ++rels[edge.rel_type];
    if (config.output == OutputMode::Json) {
        json doc;
        doc["nodes"] = g.node_count();
        doc["edges"] = g.edge_count();
        doc["labels"] = labels;
        doc["relationships"] = rels;
        print_block(out, doc.dump(2));
    } else {
        out << "nodes " << g.node_count() << "\n";
        for (const auto& [label, n] : labels)
            out << "  " << label << " " << n << "\n";
        out << "edges " << g.edge_count() << "\n";
        for (const auto& [type, n] : rels) out << "  " << type << " " << n << "\n";
    }
    return 0;
}

int cmd_repl(const AppConfig& config, const Logger& log, std::istream& in,
             std::ostream& out, std::ostream& err) {
    PropertyGraph g = load_snapshot(config);
    const SchemaCatalog& catalog = SchemaCatalog::market();
    bool json_mode = config.output == OutputMode::Json;
    std::string line;
    while (out << "mg> " << std::flush, std::getline(in, line)) {
        std::string text = trim(line);
        if (text.empty()) continue;
        if (text == ":exit" || text == ":quit") break;
        try {
            if (text == ":q" || text.rfind(":q ", 0) == 0) {
                std::string cypher = trim(text.substr(2));
                if (cypher.empty()) {
                    err << "usage: :q <cypher>\n";
                    continue;
                }
                ResultTable table = run_query_text(g, cypher);
                print_block(out, json_mode ? table.to_json() : table.to_text());
            } else if (text[0] == ':') {
                err << "unknown repl command: " << text.substr(0, text.find(' '))
                    << "\n";
            } else {
                AskFlowResult flow =
                    run_ask_flow(g, catalog, text, config.backend, true);
                for (const auto& w : flow.warnings) log.warn(w);
                print_block(out, json_mode ? report_to_json(flow.report)
                                           : report_to_text(flow.report));
            }
        } catch (const EngineError& e) {
            err << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_serve(const AppConfig& config, const Logger& log,
              const std::string& host, int port) {
    PropertyGraph g = load_snapshot(config);
    HttpService service(g, SchemaCatalog::market(), config);
    int bound = service.bind(host, port);
    log.info("serving on http://" + host + ":" + std::to_string(bound) + " (" +
             std::to_string(g.node_count()) + " nodes, " +
             std::to_string(g.edge_count()) + " edges)");
    service.run();
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
    CLI::App app{"stock market knowledge graph engine"};
    app.name("mgraph");
    app.require_subcommand(1);

    std::string config_path;
    std::string flag_data_dir;
    std::string flag_snapshot;
    std::string flag_output;
    std::string flag_backend_url;
    int flag_backend_timeout = 0;
    app.add_option("--config", config_path, "config file (key = value lines)");
    app.add_option("--data-dir", flag_data_dir, "fixture/ingest directory");
    app.add_option("--snapshot", flag_snapshot, "snapshot file path");
    app.add_option("--output", flag_output, "table or json");
    app.add_option("--backend-url", flag_backend_url,
                   "external query generator endpoint");
    app.add_option("--backend-timeout", flag_backend_timeout,
                   "backend deadline in seconds");

    // global flags may trail the subcommand (mgraph query "..." --output json)
    std::string ingest_dir;
    CLI::App* ingest = app.add_subcommand("ingest", "load files, write snapshot");
    ingest->fallthrough();
    ingest->add_option("dir", ingest_dir, "directory with record files")
        ->required();

    std::string query_text;
    CLI::App* query = app.add_subcommand("query", "run a Cypher query");
    query->fallthrough();
    query->add_option("cypher", query_text, "query text")->required();

    std::string ask_text;
    CLI::App* ask = app.add_subcommand("ask", "answer a question");
    ask->fallthrough();
    ask->add_option("question", ask_text, "natural-language question")
        ->required();

    std::string fixture_spec = "demo";
    std::uint64_t fixture_seed = 42;
    CLI::App* fixture = app.add_subcommand("fixture", "generate record files");
    fixture->fallthrough();
    fixture->add_option("spec", fixture_spec, "spec name (demo)");
    fixture->add_option("seed", fixture_seed, "generator seed");

    CLI::App* schema = app.add_subcommand("schema", "print the graph schema");
    schema->fallthrough();
    CLI::App* stats = app.add_subcommand("stats", "snapshot size breakdown");
    stats->fallthrough();
    CLI::App* repl = app.add_subcommand("repl", "interactive loop");
    repl->fallthrough();

    std::string serve_host = "127.0.0.1";
    int serve_port = 8080;
    CLI::App* serve = app.add_subcommand("serve", "start the HTTP service");
    serve->fallthrough();
    serve->add_option("--host", serve_host, "bind address");
    serve->add_option("--port", serve_port, "port, 0 picks a free one");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        AppConfig config;
        if (!config_path.empty())
            config = load_config_file(config_path);
        else if (std::filesystem::exists("marketgraph.conf"))
            config = load_config_file("marketgraph.conf");
        apply_env_overrides(config, process_env());
        if (app.count("--data-dir")) config.data_dir = flag_data_dir;
        if (app.count("--snapshot")) config.snapshot_path = flag_snapshot;
        if (app.count("--output")) {
            if (flag_output != "table" && flag_output != "json")
                throw ConfigError("output must be table or json, got " +
                                  flag_output);
            config.output =
                flag_output == "json" ? OutputMode::Json : OutputMode::Table;
        }
        if (app.count("--backend-url"))
            config.backend = BackendConfig{
                flag_backend_url,
                config.backend ? config.backend->timeout_s : 30};
        if (app.count("--backend-timeout")) {
            if (!config.backend)
                throw ConfigError("--backend-timeout requires a backend url");
            config.backend->timeout_s = flag_backend_timeout;
        }
        validate(config);
        Logger log{err, Logger::rank(config.log_level)};

        if (ingest->parsed()) return cmd_ingest(config, log, ingest_dir, out);
        if (query->parsed()) return cmd_query(config, query_text, out);
        if (ask->parsed()) return cmd_ask(config, log, ask_text, out, err);
        if (fixture->parsed())
            return cmd_fixture(config, fixture_spec, fixture_seed, out);
        if (schema->parsed()) return cmd_schema(config, out);
        if (stats->parsed()) return cmd_stats(config, out);
        if (repl->parsed()) return cmd_repl(config, log, in, out, err);
        if (serve->parsed()) return cmd_serve(config, log, serve_host, serve_port);
        err << "error: no subcommand\n";
        return 1;
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CorruptSnapshot& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BackendUnreachable& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BackendTimeout& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeneratedQueryInvalid& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EngineError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace marketgraph

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "marketgraph/config.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/schema.hpp"

namespace marketgraph {

/// Read-only HTTP facade over one immutable graph snapshot.
///
///   POST /query  {"cypher": text}    -> 200 ResultTable JSON
///                                       400 {error, position} on bad query
///   POST /ask    {"question": text}  -> 200 AnswerReport JSON
///                                       400 unsupported / unknown entity
///                                       504 external backend timeout
///                                       500 backend unreachable or invalid
///   GET  /schema                     -> 200 catalog JSON
///   GET  /health                     -> 200 {"status":"ok", nodes, edges}
///
/// Anything else escaping a handler is a 500 with {"error": text}. Handlers
/// run concurrently; the graph and catalog are never written, which
/// snapshot_intact() can confirm against the construction-time hash. Unlike
/// the CLI, a configured backend that fails is reported as an error status,
/// never silently replaced by the template translator.
class HttpService {
public:
    /// The graph and catalog must outlive the service.
    HttpService(const PropertyGraph& g, const SchemaCatalog& catalog,
                AppConfig config);
    ~HttpService();
    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds the listening socket; port 0 picks a free one. Returns the
    /// bound port. Throws IoFailure when the address is not bindable.
    int bind(const std::string& host, int port);

    /// Serves on the bound socket until stop(); blocks the caller.
    void run();

    /// run() on a background thread; returns once requests are accepted.
    void start();

    /// Stops serving and joins the background thread if one is running.
    void stop();

    /// Structural hash of the graph taken at construction.
    std::uint64_t baseline_hash() const;

    /// True while the graph still hashes to the baseline.
    bool snapshot_intact() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace marketgraph

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "marketgraph/answer.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/schema.hpp"
#include "marketgraph/table.hpp"
#include "marketgraph/translate.hpp"

namespace marketgraph {

/// The query and ask pipelines shared by the CLI and the HTTP service, so
/// the two frontends cannot drift: identical inputs yield identical tables
/// and reports through either surface.

/// parse + execute. Throws LexError / ParseError / BindError / the executor
/// errors; unknown labels or properties are not faulted here, they simply
/// match nothing (raw Cypher is the caller's responsibility).
ResultTable run_query_text(const PropertyGraph& g, const std::string& cypher);

struct AskFlowResult {
    AnswerReport report;
    std::optional<std::string> unsupported_reason;  // set iff unsupported
    std::vector<std::string> warnings;  // backend fallbacks taken
};

/// classify -> translate -> execute -> compose. Unsupported questions skip
/// translation and execution and come back as a report with the reason (no
/// backend call is made for them). When `backend` is set the query text
/// comes from the external generator, gated through validate_generated;
/// with `fallback_on_backend_failure` a backend fault (unreachable, timeout,
/// invalid generation) drops to the template translator and is recorded in
/// `warnings`, otherwise it propagates to the caller.
AskFlowResult run_ask_flow(const PropertyGraph& g, const SchemaCatalog& catalog,
                           const std::string& question,
                           const std::optional<BackendConfig>& backend,
                           bool fallback_on_backend_failure);

}  // namespace marketgraph

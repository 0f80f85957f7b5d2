#pragma once

#include <string>
#include <vector>

#include "marketgraph/ast.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/question.hpp"
#include "marketgraph/schema.hpp"

namespace marketgraph {

struct TranslationResult {
    QuestionIntent intent;
    std::string query_text;  // always parses to ast
    QueryAst ast;            // binder-valid against the catalog
    std::vector<std::string> notes;  // defaults applied, fallbacks taken
};

/// Deterministic template instantiation: the same intent over the same graph
/// always yields byte-identical query text. Entity references are resolved
/// against the graph here (by stock code when present, else case-insensitive
/// name match over the four company name properties, or the sector name).
/// Throws EntityNotFound for unresolvable references and TemplateGap when the
/// intent is Unsupported or a template invariant breaks.
TranslationResult translate(const QuestionIntent& intent,
                            const PropertyGraph& g,
                            const SchemaCatalog& catalog);

/// Names the query mentions that the catalog does not know: node labels,
/// relationship types, and properties (pattern property maps and `var.prop`
/// accesses). Empty means binder-valid.
std::vector<std::string> bind_errors(const QueryAst& ast,
                                     const SchemaCatalog& catalog);

/// The documented rule table sent to external backends as the `rules` field,
/// mirroring what a prompt would carry.
const std::string& translation_rules_text();

// ----- external generator contract -------------------------------------------

struct BackendConfig {
    std::string url;     // http://host:port/path
    int timeout_s = 30;  // connect + read, per call
};

/// One JSON-over-HTTP exchange: POST {schema, question, rules}, expect
/// {"query": Text}. Returns the raw query text without validating it.
/// Throws BackendUnreachable (connect failure, non-200 status, unsupported
/// scheme), BackendTimeout (connect or read deadline), and
/// GeneratedQueryInvalid (response is not the documented envelope).
std::string external_generate(const std::string& question,
                              const std::string& schema_text,
                              const BackendConfig& config);

/// The safety gate for generated text: parse, then check every referenced
/// name against the catalog. Throws GeneratedQueryInvalid with the parse or
/// bind diagnostics; a query that fails here must never reach the executor.
TranslationResult validate_generated(const QuestionIntent& intent,
                                     const std::string& query_text,
                                     const SchemaCatalog& catalog);

}  // namespace marketgraph

#pragma once

#include <string>

#include "marketgraph/ast.hpp"

namespace marketgraph {

// Parses a query and runs the binder pass over the result. The binder walks
// the clauses in order, tracking which names are bound and whether each is a
// node, a relationship, or a scalar, so every variable reference in the tree
// is known-valid before execution. Throws LexError, ParseError, or BindError,
// each carrying a 1-based line/column position.
QueryAst parse(const std::string& text);

}  // namespace marketgraph

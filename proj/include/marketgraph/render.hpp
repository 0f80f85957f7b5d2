#pragma once

#include <string>

#include "marketgraph/ast.hpp"
#include "marketgraph/value.hpp"

namespace marketgraph {

// Canonical textual form of a query: uppercase keywords, single spaces,
// explicit ASC/DESC on every order key. Rendering then re-parsing yields an
// equal AST for any parser-producible tree (the renderer inserts parentheses
// around low-precedence subexpressions where the grammar would need them).
std::string render(const QueryAst& q);

std::string render_expr(const ExprPtr& e);
std::string render_pattern(const Pattern& p);

// Literal formatting shared by the renderer and the result table printer.
// Floats use the shortest round-trip decimal form with a ".0" suffix when
// no '.' or exponent is present, so Integer and Float stay distinguishable.
std::string render_value(const Value& v);

}  // namespace marketgraph

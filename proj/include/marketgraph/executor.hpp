#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "marketgraph/ast.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/table.hpp"

namespace marketgraph {

/// A name in flight during execution: a graph entity or a computed scalar.
/// Variables a failed OPTIONAL MATCH leaves behind hold Scalar Null.
struct BoundValue {
    enum class Kind { Node, Edge, Scalar };
    Kind kind = Kind::Scalar;
    NodeId node{};
    EdgeId edge{};
    Value scalar;

    static BoundValue of_node(NodeId id);
    static BoundValue of_edge(EdgeId id);
    static BoundValue of_scalar(Value v);
    bool is_null_scalar() const { return kind == Kind::Scalar && scalar.is_null(); }
};

bool bound_equal(const BoundValue& a, const BoundValue& b);

using Binding = std::map<std::string, BoundValue>;

struct ExecStats {
    std::size_t index_seeks = 0;
    std::size_t scans = 0;
    /// Comparisons whose operand kinds have no defined order (and truth tests
    /// of non-boolean operands). Each one evaluates to Null; none aborts.
    std::size_t type_mismatches = 0;
};

/// Three-valued predicate result.
enum class Truth { False, True, Unknown };

Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);
Truth truth_not(Truth a);

/// Evaluates an expression against one row. Bare variables yield the bound
/// entity or scalar; every other form yields a scalar.
BoundValue eval_expr(const ExprPtr& e, const Binding& binding,
                     const PropertyGraph& g, ExecStats& stats);

/// Predicate evaluation with null-propagating three-valued semantics.
Truth eval_predicate(const ExprPtr& e, const Binding& binding,
                     const PropertyGraph& g, ExecStats& stats);

/// Total order used by ORDER BY: Boolean, then numbers (Integer and Float
/// together), then Text, then TextList, then nodes by id, then relationships
/// by id, with Null greatest. Engine-defined for cross-kind pairs; within a
/// kind it follows the natural order. Returns <0, 0, >0.
int order_compare(const BoundValue& a, const BoundValue& b);

/// Runs a bound query. Traversal visits nodes and adjacent edges in
/// ascending id order and plans each pattern left to right, seeding the
/// first node from a declared index when its pattern names an indexed
/// label/property pair, so results are deterministic for a given graph
/// history. ORDER BY is a stable sort over order_compare.
ResultTable execute(const PropertyGraph& g, const QueryAst& q,
                    ExecStats* stats = nullptr);

}  // namespace marketgraph

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "marketgraph/errors.hpp"
#include "marketgraph/value.hpp"

namespace marketgraph {

// ----- expressions ----------------------------------------------------------

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmp_op_text(CmpOp op);  // "=", "<>", "<", "<=", ">", ">="

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree. Precedence: Not > Cmp/In > And > Or. Parenthesized is a
/// real node so parse(render(ast)) reproduces the tree exactly.
struct Expr {
    enum class Kind {
        Variable,    // bare variable reference (projections, order keys)
        PropAccess,  // var.prop
        Literal,
        List,        // [e1, e2, ...]
        Cmp,         // lhs op rhs
        In,          // lhs IN list
        And,
        Or,
        Not,   // operand in lhs
        Paren  // operand in lhs
    };

    Kind kind;
    SourcePos pos;

    std::string var;   // Variable, PropAccess
    std::string prop;  // PropAccess
    Value literal;     // Literal
    std::vector<ExprPtr> items;  // List
    CmpOp op = CmpOp::Eq;        // Cmp
    ExprPtr lhs;
    ExprPtr rhs;

    static ExprPtr variable(std::string name, SourcePos pos = {});
    static ExprPtr prop_access(std::string var, std::string prop, SourcePos pos = {});
    static ExprPtr literal_value(Value v, SourcePos pos = {});
    static ExprPtr list(std::vector<ExprPtr> items, SourcePos pos = {});
    static ExprPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
    static ExprPtr in_list(ExprPtr lhs, ExprPtr list, SourcePos pos = {});
    static ExprPtr logical_and(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
    static ExprPtr logical_or(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
    static ExprPtr logical_not(ExprPtr operand, SourcePos pos = {});
    static ExprPtr paren(ExprPtr operand, SourcePos pos = {});
};

// structural equality, ignoring grouping parens (they change no semantics)
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// ----- patterns --------------------------------------------------------------

struct NodePat {
    std::optional<std::string> var;
    std::vector<std::string> labels;
    // property equality pairs, literal values only, in written order
    std::vector<std::pair<std::string, Value>> prop_map;
    SourcePos pos;
};

enum class RelDir { LeftToRight, RightToLeft, Undirected };

struct RelPat {
    std::optional<std::string> var;
    std::vector<std::string> rel_types;  // empty = any type
    RelDir dir = RelDir::LeftToRight;
    SourcePos pos;
};

/// Alternating chain: k node patterns, k-1 relationship patterns, k >= 1.
struct Pattern {
    std::vector<NodePat> nodes;
    std::vector<RelPat> rels;
};

bool pattern_equal(const Pattern& a, const Pattern& b);

// ----- clauses ---------------------------------------------------------------

struct ProjectionItem {
    ExprPtr expr;  // may be Kind::Variable for a bare variable
    std::optional<std::string> alias;
    SourcePos pos;
};

/// Output column name: the alias when present, the variable name for a bare
/// variable, otherwise the canonical rendering of the expression.
std::string projection_name(const ProjectionItem& item);

struct MatchClause {
    bool optional = false;
    std::vector<Pattern> patterns;
    ExprPtr where;  // may be null
};

struct WithClause {
    std::vector<ProjectionItem> items;
    ExprPtr where;  // may be null
};

using Clause = std::variant<MatchClause, WithClause>;

struct ReturnClause {
    std::vector<ProjectionItem> items;
};

struct OrderKey {
    ExprPtr expr;
    bool ascending = true;
};

struct OrderByClause {
    std::vector<OrderKey> keys;
};

/// One parsed query: reading clauses, exactly one RETURN, then at most one
/// ORDER BY. Built by the parser, which also runs the binder pass, so any
/// QueryAst obtained from parse() has fully validated variable scoping.
struct QueryAst {
    std::vector<Clause> clauses;
    ReturnClause ret;
    std::optional<OrderByClause> order_by;
};

bool ast_equal(const QueryAst& a, const QueryAst& b);

}  // namespace marketgraph

#include "marketgraph/ast.hpp"

#include "marketgraph/render.hpp"

namespace marketgraph {

const char* cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "<>";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr Expr::variable(std::string name, SourcePos pos) {
    Expr e{Kind::Variable, pos, std::move(name), {}, {}, {}, CmpOp::Eq, {}, {}};
    return make(std::move(e));
}

ExprPtr Expr::prop_access(std::string var, std::string prop, SourcePos pos) {
    Expr e{Kind::PropAccess, pos, std::move(var), std::move(prop), {}, {},
           CmpOp::Eq, {}, {}};
    return make(std::move(e));
}

ExprPtr Expr::literal_value(Value v, SourcePos pos) {
    Expr e{Kind::Literal, pos, {}, {}, std::move(v), {}, CmpOp::Eq, {}, {}};
    return make(std::move(e));
}

ExprPtr Expr::list(std::vector<ExprPtr> items, SourcePos pos) {
    Expr e{Kind::List, pos, {}, {}, {}, std::move(items), CmpOp::Eq, {}, {}};
    return make(std::move(e));
}

ExprPtr Expr::cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    Expr e{Kind::Cmp, pos, {}, {}, {}, {}, op, std::move(lhs), std::move(rhs)};
    return make(std::move(e));
}

ExprPtr Expr::in_list(ExprPtr lhs, ExprPtr list, SourcePos pos) {
    Expr e{Kind::In, pos, {}, {}, {}, {}, CmpOp::Eq, std::move(lhs), std::move(list)};
    return make(std::move(e));
}

ExprPtr Expr::logical_and(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    Expr e{Kind::And, pos, {}, {}, {}, {}, CmpOp::Eq, std::move(lhs), std::move(rhs)};
    return make(std::move(e));
}

ExprPtr Expr::logical_or(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    Expr e{Kind::Or, pos, {}, {}, {}, {}, CmpOp::Eq, std::move(lhs), std::move(rhs)};
    return make(std::move(e));
}

ExprPtr Expr::logical_not(ExprPtr operand, SourcePos pos) {
    Expr e{Kind::Not, pos, {}, {}, {}, {}, CmpOp::Eq, std::move(operand), {}};
    return make(std::move(e));
}

ExprPtr Expr::paren(ExprPtr operand, SourcePos pos) {
    Expr e{Kind::Paren, pos, {}, {}, {}, {}, CmpOp::Eq, std::move(operand), {}};
    return make(std::move(e));
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    // grouping parens carry no meaning, so compare through them; rendering
    // may insert parens a hand-built tree never had
    if (a->kind == Expr::Kind::Paren) return expr_equal(a->lhs, b);
    if (b->kind == Expr::Kind::Paren) return expr_equal(a, b->lhs);
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Variable: return a->var == b->var;
        case Expr::Kind::PropAccess:
            return a->var == b->var && a->prop == b->prop;
        case Expr::Kind::Literal: return a->literal == b->literal;
        case Expr::Kind::List: {
            if (a->items.size() != b->items.size()) return false;
            for (std::size_t i = 0; i < a->items.size(); ++i)
                if (!expr_equal(a->items[i], b->items[i])) return false;
            return true;
        }
        case Expr::Kind::Cmp:
            return a->op == b->op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
        case Expr::Kind::In:
        case Expr::Kind::And:
        case Expr::Kind::Or:
            return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
        case Expr::Kind::Not:
        case Expr::Kind::Paren:
            return expr_equal(a->lhs, b->lhs);
    }
    return false;
}

namespace {

bool node_pat_equal(const NodePat& a, const NodePat& b) {
    return a.var == b.var && a.labels == b.labels && a.prop_map == b.prop_map;
}

bool rel_pat_equal(const RelPat& a, const RelPat& b) {
    return a.var == b.var && a.rel_types == b.rel_types && a.dir == b.dir;
}

bool items_equal(const std::vector<ProjectionItem>& a,
                 const std::vector<ProjectionItem>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].alias != b[i].alias) return false;
        if (!expr_equal(a[i].expr, b[i].expr)) return false;
    }
    return true;
}

bool clause_equal(const Clause& a, const Clause& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ma = std::get_if<MatchClause>(&a)) {
        const auto& mb = std::get<MatchClause>(b);
        if (ma->optional != mb.optional) return false;
        if (ma->patterns.size() != mb.patterns.size()) return false;
        for (std::size_t i = 0; i < ma->patterns.size(); ++i)
            if (!pattern_equal(ma->patterns[i], mb.patterns[i])) return false;
        return expr_equal(ma->where, mb.where);
    }
    const auto& wa = std::get<WithClause>(a);
    const auto& wb = std::get<WithClause>(b);
    return items_equal(wa.items, wb.items) && expr_equal(wa.where, wb.where);
}

}  // namespace

bool pattern_equal(const Pattern& a, const Pattern& b) {
    if (a.nodes.size() != b.nodes.size() || a.rels.size() != b.rels.size())
        return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
        if (!node_pat_equal(a.nodes[i], b.nodes[i])) return false;
    for (std::size_t i = 0; i < a.rels.size(); ++i)
        if (!rel_pat_equal(a.rels[i], b.rels[i])) return false;
    return true;
}

bool ast_equal(const QueryAst& a, const QueryAst& b) {
    if (a.clauses.size() != b.clauses.size()) return false;
    for (std::size_t i = 0; i < a.clauses.size(); ++i)
        if (!clause_equal(a.clauses[i], b.clauses[i])) return false;
    if (!items_equal(a.ret.items, b.ret.items)) return false;
    if (a.order_by.has_value() != b.order_by.has_value()) return false;
    if (a.order_by) {
        if (a.order_by->keys.size() != b.order_by->keys.size()) return false;
        for (std::size_t i = 0; i < a.order_by->keys.size(); ++i) {
            const auto& ka = a.order_by->keys[i];
            const auto& kb = b.order_by->keys[i];
            if (ka.ascending != kb.ascending) return false;
            if (!expr_equal(ka.expr, kb.expr)) return false;
        }
    }
    return true;
}

std::string projection_name(const ProjectionItem& item) {
    if (item.alias) return *item.alias;
    if (item.expr->kind == Expr::Kind::Variable) return item.expr->var;
    return render_expr(item.expr);
}

}  // namespace marketgraph

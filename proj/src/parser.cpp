#include "marketgraph/parser.hpp"

#include <map>
#include <set>

#include "marketgraph/lexer.hpp"

namespace marketgraph {

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    QueryAst parse_query() {
        QueryAst q;
        while (true) {
            if (at(Tok::KwMatch) || at(Tok::KwOptional)) {
                q.clauses.emplace_back(parse_match());
            } else if (at(Tok::KwWith)) {
                q.clauses.emplace_back(parse_with());
            } else {
                break;
            }
        }
        expect(Tok::KwReturn, "RETURN");
        q.ret.items = parse_items();
        if (accept(Tok::KwOrder)) {
            expect(Tok::KwBy, "BY");
            OrderByClause ob;
            do {
                OrderKey key;
                key.expr = parse_expr();
                if (accept(Tok::KwDesc)) {
                    key.ascending = false;
                } else {
                    accept(Tok::KwAsc);  // ASC is the default
                }
                ob.keys.push_back(std::move(key));
            } while (accept(Tok::Comma));
            q.order_by = std::move(ob);
        }
        expect(Tok::End, "end of query");
        return q;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    Token take() {
        Token t = toks_[i_];
        if (t.kind != Tok::End) ++i_;
        return t;
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        take();
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) {
            throw ParseError(peek().pos,
                             "expected " + what + ", found " + token_name(peek().kind));
        }
        return take();
    }

    MatchClause parse_match() {
        MatchClause m;
        if (accept(Tok::KwOptional)) m.optional = true;
        expect(Tok::KwMatch, "MATCH");
        do {
            m.patterns.push_back(parse_pattern());
        } while (accept(Tok::Comma));
        if (accept(Tok::KwWhere)) m.where = parse_expr();
        return m;
    }

    WithClause parse_with() {
        expect(Tok::KwWith, "WITH");
        WithClause w;
        w.items = parse_items();
        if (accept(Tok::KwWhere)) w.where = parse_expr();
        return w;
    }

    std::vector<ProjectionItem> parse_items() {
        std::vector<ProjectionItem> items;
        do {
            ProjectionItem item;
            item.pos = peek().pos;
            item.expr = parse_expr();
            if (accept(Tok::KwAs)) item.alias = expect(Tok::Ident, "name after AS").text;
            items.push_back(std::move(item));
        } while (accept(Tok::Comma));
        return items;
    }

    Pattern parse_pattern() {
        Pattern p;
        p.nodes.push_back(parse_node());
        while (at(Tok::Minus) || at(Tok::Lt)) {
            p.rels.push_back(parse_rel());
            p.nodes.push_back(parse_node());
        }
        return p;
    }

    NodePat parse_node() {
        NodePat n;
        n.pos = peek().pos;
        expect(Tok::LParen, "'(' starting a node pattern");
        if (at(Tok::Ident)) n.var = take().text;
        while (accept(Tok::Colon)) n.labels.push_back(expect(Tok::Ident, "label name").text);
        if (at(Tok::LBrace)) n.prop_map = parse_prop_map();
        expect(Tok::RParen, "')'");
        return n;
    }

    std::vector<std::pair<std::string, Value>> parse_prop_map() {
        expect(Tok::LBrace, "'{'");
        std::vector<std::pair<std::string, Value>> props;
        if (!at(Tok::RBrace)) {
            do {
                std::string key = expect(Tok::Ident, "property name").text;
                expect(Tok::Colon, "':'");
                props.emplace_back(std::move(key), parse_literal());
            } while (accept(Tok::Comma));
        }
        expect(Tok::RBrace, "'}'");
        return props;
    }

    Value parse_literal() {
        switch (peek().kind) {
            case Tok::Str: return Value::text(take().text);
            case Tok::Int: return Value::integer(take().int_value);
            case Tok::Float: return Value::floating(take().float_value);
            case Tok::KwTrue: take(); return Value::boolean(true);
            case Tok::KwFalse: take(); return Value::boolean(false);
            case Tok::KwNull: take(); return Value::null();
            case Tok::Minus: {
                take();
                if (at(Tok::Int)) return Value::integer(-take().int_value);
                if (at(Tok::Float)) return Value::floating(-take().float_value);
                throw ParseError(peek().pos, "expected a number after '-'");
            }
            case Tok::LBracket: {
                // Lists in a property map hold text only, matching the one
                // list-valued kind properties can store.
                take();
                std::vector<std::string> items;
                if (!at(Tok::RBracket)) {
                    do {
                        items.push_back(expect(Tok::Str, "string in property list").text);
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RBracket, "']'");
                return Value::text_list(std::move(items));
            }
            default:
                throw ParseError(peek().pos, "expected a literal value, found " +
                                                 std::string(token_name(peek().kind)));
        }
    }

    RelPat parse_rel() {
        RelPat r;
        r.pos = peek().pos;
        bool left_arrow = accept(Tok::Lt);
        expect(Tok::Minus, "'-'");
        expect(Tok::LBracket, "'[' in a relationship pattern");
        if (at(Tok::Ident)) r.var = take().text;
        if (accept(Tok::Colon)) {
            r.rel_types.push_back(expect(Tok::Ident, "relationship type").text);
            while (accept(Tok::Pipe)) {
                accept(Tok::Colon);  // both A|B and A|:B are accepted
                r.rel_types.push_back(expect(Tok::Ident, "relationship type").text);
            }
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Minus, "'-'");
        bool right_arrow = accept(Tok::Gt);
        if (left_arrow && right_arrow)
            throw ParseError(r.pos, "relationship cannot point both ways");
        r.dir = left_arrow    ? RelDir::RightToLeft
                : right_arrow ? RelDir::LeftToRight
                              : RelDir::Undirected;
        return r;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at(Tok::KwOr)) {
            SourcePos pos = take().pos;
            lhs = Expr::logical_or(std::move(lhs), parse_and(), pos);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (at(Tok::KwAnd)) {
            SourcePos pos = take().pos;
            lhs = Expr::logical_and(std::move(lhs), parse_not(), pos);
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (at(Tok::KwNot)) {
            SourcePos pos = take().pos;
            return Expr::logical_not(parse_not(), pos);
        }
        return parse_cmp();
    }

    // Comparisons do not chain: a < b < c is a parse error at the second '<'.
    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_atom();
        CmpOp op;
        switch (peek().kind) {
            case Tok::Eq: op = CmpOp::Eq; break;
            case Tok::Ne: op = CmpOp::Ne; break;
            case Tok::Lt: op = CmpOp::Lt; break;
            case Tok::Le: op = CmpOp::Le; break;
            case Tok::Gt: op = CmpOp::Gt; break;
            case Tok::Ge: op = CmpOp::Ge; break;
            case Tok::KwIn: {
                SourcePos pos = take().pos;
                ExprPtr rhs = parse_atom();
                if (rhs->kind != Expr::Kind::List)
                    throw ParseError(rhs->pos, "IN requires a list literal on its right side");
                return Expr::in_list(std::move(lhs), std::move(rhs), pos);
            }
            default: return lhs;
        }
        SourcePos pos = take().pos;
        return Expr::cmp(op, std::move(lhs), parse_atom(), pos);
    }

    ExprPtr parse_atom() {
        const SourcePos pos = peek().pos;
        switch (peek().kind) {
            case Tok::Str: return Expr::literal_value(Value::text(take().text), pos);
            case Tok::Int: return Expr::literal_value(Value::integer(take().int_value), pos);
            case Tok::Float:
                return Expr::literal_value(Value::floating(take().float_value), pos);
            case Tok::KwTrue: take(); return Expr::literal_value(Value::boolean(true), pos);
            case Tok::KwFalse: take(); return Expr::literal_value(Value::boolean(false), pos);
            case Tok::KwNull: take(); return Expr::literal_value(Value::null(), pos);
            case Tok::Minus: {
                take();
                if (at(Tok::Int)) return Expr::literal_value(Value::integer(-take().int_value), pos);
                if (at(Tok::Float))
                    return Expr::literal_value(Value::floating(-take().float_value), pos);
                throw ParseError(peek().pos, "expected a number after '-'");
            }
            case Tok::Ident: {
                Token name = take();
                if (accept(Tok::Dot)) {
                    Token prop = expect(Tok::Ident, "property name after '.'");
                    return Expr::prop_access(name.text, prop.text, pos);
                }
                return Expr::variable(name.text, pos);
            }
            case Tok::LParen: {
                take();
                ExprPtr inner = parse_expr();
                expect(Tok::RParen, "')'");
                return Expr::paren(std::move(inner), pos);
            }
            case Tok::LBracket: {
                take();
                std::vector<ExprPtr> items;
                if (!at(Tok::RBracket)) {
                    do {
                        items.push_back(parse_expr());
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RBracket, "']'");
                return Expr::list(std::move(items), pos);
            }
            default:
                throw ParseError(pos, "expected an expression, found " +
                                          std::string(token_name(peek().kind)));
        }
    }
};

enum class VarKind { Node, Rel, Scalar };

const char* var_kind_word(VarKind k) {
    switch (k) {
        case VarKind::Node: return "node";
        case VarKind::Rel: return "relationship";
        case VarKind::Scalar: return "scalar";
    }
    return "?";
}

using Scope = std::map<std::string, VarKind>;

class Binder {
public:
    void run(const QueryAst& q) {
        for (const auto& clause : q.clauses) {
            if (const auto* m = std::get_if<MatchClause>(&clause)) {
                bind_match(*m);
            } else {
                bind_with(std::get<WithClause>(clause));
            }
        }
        Scope columns = bind_projection(q.ret.items, /*require_alias=*/false, "RETURN");
        if (q.order_by) {
            // Order keys see the pre-RETURN scope plus the output columns,
            // with a column taking precedence when names collide.
            Scope order_scope = scope_;
            for (const auto& [name, kind] : columns) order_scope[name] = kind;
            for (const auto& key : q.order_by->keys) check_expr(key.expr, order_scope);
        }
    }

private:
    Scope scope_;

    void bind_match(const MatchClause& m) {
        for (const auto& p : m.patterns) {
            for (const auto& n : p.nodes) {
                if (!n.var) continue;
                auto it = scope_.find(*n.var);
                if (it == scope_.end()) {
                    scope_[*n.var] = VarKind::Node;
                } else if (it->second != VarKind::Node) {
                    throw BindError(n.pos, *n.var,
                                    "'" + *n.var + "' is a " + var_kind_word(it->second) +
                                        " and cannot appear as a node");
                }
            }
            for (const auto& r : p.rels) {
                if (!r.var) continue;
                auto it = scope_.find(*r.var);
                if (it != scope_.end()) {
                    throw BindError(r.pos, *r.var,
                                    "'" + *r.var + "' is already bound and cannot be "
                                    "reused as a relationship");
                }
                scope_[*r.var] = VarKind::Rel;
            }
        }
        if (m.where) check_expr(m.where, scope_);
    }

    void bind_with(const WithClause& w) {
        scope_ = bind_projection(w.items, /*require_alias=*/true, "WITH");
        if (w.where) check_expr(w.where, scope_);
    }

    Scope bind_projection(const std::vector<ProjectionItem>& items, bool require_alias,
                          const char* clause_name) {
        Scope out;
        for (const auto& item : items) {
            check_expr(item.expr, scope_);
            bool bare_var = item.expr->kind == Expr::Kind::Variable;
            if (!item.alias && !bare_var && require_alias) {
                throw BindError(item.pos, projection_name(item),
                                std::string(clause_name) +
                                    " item that is not a bare variable needs AS");
            }
            std::string name = projection_name(item);
            if (out.count(name)) {
                throw BindError(item.pos, name,
                                "duplicate output name '" + name + "' in " + clause_name);
            }
            out[name] = bare_var ? scope_.at(item.expr->var) : VarKind::Scalar;
        }
        return out;
    }

    void check_expr(const ExprPtr& e, const Scope& scope) {
        switch (e->kind) {
            case Expr::Kind::Variable: {
                if (!scope.count(e->var))
                    throw BindError(e->pos, e->var, "unknown variable '" + e->var + "'");
                return;
            }
            case Expr::Kind::PropAccess: {
                auto it = scope.find(e->var);
                if (it == scope.end())
                    throw BindError(e->pos, e->var, "unknown variable '" + e->var + "'");
                if (it->second == VarKind::Scalar)
                    throw BindError(e->pos, e->var,
                                    "'" + e->var + "' is a scalar and has no properties");
                return;
            }
            case Expr::Kind::Literal: return;
            case Expr::Kind::List:
                for (const auto& item : e->items) check_expr(item, scope);
                return;
            case Expr::Kind::Cmp:
                check_expr(e->lhs, scope);
                check_expr(e->rhs, scope);
                return;
            case Expr::Kind::In:
                check_expr(e->lhs, scope);
                check_expr(e->rhs, scope);
                return;
            case Expr::Kind::And:
            case Expr::Kind::Or:
                check_expr(e->lhs, scope);
                check_expr(e->rhs, scope);
                return;
            case Expr::Kind::Not:
            case Expr::Kind::Paren:
                check_expr(e->lhs, scope);
                return;
        }
    }
};

}  // namespace

QueryAst parse(const std::string& text) {
    Parser parser(tokenize(text));
    QueryAst q = parser.parse_query();
    Binder().run(q);
    return q;
}

}  // namespace marketgraph

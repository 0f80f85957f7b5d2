#include "marketgraph/render.hpp"

#include <charconv>
#include <sstream>

namespace marketgraph {

namespace {

std::string quote_text(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string float_text(double d) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, p);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

// Precedence levels, loosest first: Or=0, And=1, Not=2, Cmp/In=3, atom=4.
int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Or: return 0;
        case Expr::Kind::And: return 1;
        case Expr::Kind::Not: return 2;
        case Expr::Kind::Cmp:
        case Expr::Kind::In: return 3;
        default: return 4;
    }
}

std::string child(const ExprPtr& e, int min_prec) {
    std::string s = render_expr(e);
    if (precedence(e) < min_prec) return "(" + s + ")";
    return s;
}

}  // namespace

std::string render_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Null: return "NULL";
        case Value::Kind::Text: return quote_text(v.as_text());
        case Value::Kind::Integer: return std::to_string(v.as_integer());
        case Value::Kind::Float: return float_text(v.as_floating());
        case Value::Kind::Boolean: return v.as_boolean() ? "TRUE" : "FALSE";
        case Value::Kind::TextList: {
            std::string out = "[";
            bool first = true;
            for (const auto& s : v.as_text_list()) {
                if (!first) out += ", ";
                first = false;
                out += quote_text(s);
            }
            out += "]";
            return out;
        }
    }
    return "NULL";
}

std::string render_expr(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Variable:
            return e->var;
        case Expr::Kind::PropAccess:
            return e->var + "." + e->prop;
        case Expr::Kind::Literal:
            return render_value(e->literal);
        case Expr::Kind::List: {
            std::string out = "[";
            bool first = true;
            for (const auto& item : e->items) {
                if (!first) out += ", ";
                first = false;
                out += render_expr(item);
            }
            out += "]";
            return out;
        }
        case Expr::Kind::Cmp:
            return child(e->lhs, 4) + " " + cmp_op_text(e->op) + " " + child(e->rhs, 4);
        case Expr::Kind::In:
            return child(e->lhs, 4) + " IN " + render_expr(e->rhs);
        case Expr::Kind::And:
            return child(e->lhs, 1) + " AND " + child(e->rhs, 2);
        case Expr::Kind::Or:
            return child(e->lhs, 0) + " OR " + child(e->rhs, 1);
        case Expr::Kind::Not:
            return "NOT " + child(e->lhs, 2);
        case Expr::Kind::Paren:
            return "(" + render_expr(e->lhs) + ")";
    }
    return "";
}

namespace {

std::string render_node(const NodePat& n) {
    std::string out = "(";
    if (n.var) out += *n.var;
    for (const auto& label : n.labels) out += ":" + label;
    if (!n.prop_map.empty()) {
        if (n.var || !n.labels.empty()) out += " ";
        out += "{";
        bool first = true;
        for (const auto& [k, v] : n.prop_map) {
            if (!first) out += ", ";
            first = false;
            out += k + ": " + render_value(v);
        }
        out += "}";
    }
    out += ")";
    return out;
}

std::string render_rel(const RelPat& r) {
    std::string inner = "[";
    if (r.var) inner += *r.var;
    bool first = true;
    for (const auto& t : r.rel_types) {
        inner += first ? ":" : "|";
        first = false;
        inner += t;
    }
    inner += "]";
    switch (r.dir) {
        case RelDir::LeftToRight: return "-" + inner + "->";
        case RelDir::RightToLeft: return "<-" + inner + "-";
        case RelDir::Undirected: return "-" + inner + "-";
    }
    return "-" + inner + "-";
}

}  // namespace

std::string render_pattern(const Pattern& p) {
    std::string out = render_node(p.nodes[0]);
    for (std::size_t i = 0; i < p.rels.size(); ++i) {
        out += render_rel(p.rels[i]);
        out += render_node(p.nodes[i + 1]);
    }
    return out;
}

std::string render(const QueryAst& q) {
    std::ostringstream out;
    for (const auto& clause : q.clauses) {
        if (const auto* m = std::get_if<MatchClause>(&clause)) {
            if (m->optional) out << "OPTIONAL ";
            out << "MATCH ";
            bool first = true;
            for (const auto& p : m->patterns) {
                if (!first) out << ", ";
                first = false;
                out << render_pattern(p);
            }
            if (m->where) out << " WHERE " << render_expr(m->where);
        } else {
            const auto& w = std::get<WithClause>(clause);
            out << "WITH ";
            bool first = true;
            for (const auto& item : w.items) {
                if (!first) out << ", ";
                first = false;
                out << render_expr(item.expr);
                if (item.alias) out << " AS " << *item.alias;
            }
            if (w.where) out << " WHERE " << render_expr(w.where);
        }
        out << " ";
    }
    out << "RETURN ";
    bool first = true;
    for (const auto& item : q.ret.items) {
        if (!first) out << ", ";
        first = false;
        out << render_expr(item.expr);
        if (item.alias) out << " AS " << *item.alias;
    }
    if (q.order_by) {
        out << " ORDER BY ";
        first = true;
        for (const auto& key : q.order_by->keys) {
            if (!first) out << ", ";
            first = false;
            out << render_expr(key.expr) << (key.ascending ? " ASC" : " DESC");
        }
    }
    return out.str();
}

}  // namespace marketgraph

#include "marketgraph/executor.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace marketgraph {

BoundValue BoundValue::of_node(NodeId id) {
    BoundValue b;
    b.kind = Kind::Node;
    b.node = id;
    return b;
}
BoundValue BoundValue::of_edge(EdgeId id) {
    BoundValue b;
    b.kind = Kind::Edge;
    b.edge = id;
    return b;
}
BoundValue BoundValue::of_scalar(Value v) {
    BoundValue b;
    b.kind = Kind::Scalar;
    b.scalar = std::move(v);
    return b;
}

bool bound_equal(const BoundValue& a, const BoundValue& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case BoundValue::Kind::Node: return a.node == b.node;
        case BoundValue::Kind::Edge: return a.edge == b.edge;
        case BoundValue::Kind::Scalar: return a.scalar == b.scalar;
    }
    return false;
}

Truth truth_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}
Truth truth_or(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::False && b == Truth::False) return Truth::False;
    return Truth::Unknown;
}
Truth truth_not(Truth a) {
    if (a == Truth::Unknown) return Truth::Unknown;
    return a == Truth::True ? Truth::False : Truth::True;
}

namespace {

Truth to_truth(bool b) { return b ? Truth::True : Truth::False; }

/// Query-level equality. Entities compare by identity; Integer and Float
/// compare numerically; any other cross-kind pair is plain false; Null on
/// either side is Unknown.
Truth equality(const BoundValue& a, const BoundValue& b) {
    if (a.is_null_scalar() || b.is_null_scalar()) return Truth::Unknown;
    if (a.kind == BoundValue::Kind::Node && b.kind == BoundValue::Kind::Node)
        return to_truth(a.node == b.node);
    if (a.kind == BoundValue::Kind::Edge && b.kind == BoundValue::Kind::Edge)
        return to_truth(a.edge == b.edge);
    if (a.kind != BoundValue::Kind::Scalar || b.kind != BoundValue::Kind::Scalar)
        return Truth::False;
    const Value& x = a.scalar;
    const Value& y = b.scalar;
    if (x.is_numeric() && y.is_numeric()) {
        if (x.kind() == Value::Kind::Integer && y.kind() == Value::Kind::Integer)
            return to_truth(x.as_integer() == y.as_integer());
        return to_truth(x.numeric() == y.numeric());
    }
    if (x.kind() != y.kind()) return Truth::False;
    return to_truth(x == y);
}

/// Ordering for predicates: defined within the numeric family, Text,
/// Boolean, and TextList. A Null operand propagates silently; an operand
/// pairing with no defined order counts a type mismatch. Either way the
/// comparison result is Unknown.
std::optional<int> predicate_order(const BoundValue& a, const BoundValue& b,
                                   ExecStats& stats) {
    if (a.is_null_scalar() || b.is_null_scalar()) return std::nullopt;
    if (a.kind != BoundValue::Kind::Scalar || b.kind != BoundValue::Kind::Scalar) {
        ++stats.type_mismatches;
        return std::nullopt;
    }
    const Value& x = a.scalar;
    const Value& y = b.scalar;
    auto three_way = [](auto l, auto r) { return l < r ? -1 : l > r ? 1 : 0; };
    if (x.is_numeric() && y.is_numeric()) {
        if (x.kind() == Value::Kind::Integer && y.kind() == Value::Kind::Integer)
            return three_way(x.as_integer(), y.as_integer());
        return three_way(x.numeric(), y.numeric());
    }
    if (x.kind() != y.kind()) {
        ++stats.type_mismatches;
        return std::nullopt;
    }
    switch (x.kind()) {
        case Value::Kind::Text: return three_way(x.as_text(), y.as_text());
        case Value::Kind::Boolean: return three_way(x.as_boolean(), y.as_boolean());
        case Value::Kind::TextList: return three_way(x.as_text_list(), y.as_text_list());
        default:
            ++stats.type_mismatches;
            return std::nullopt;
    }
}

Truth truth_of(const BoundValue& v, ExecStats& stats) {
    if (v.is_null_scalar()) return Truth::Unknown;
    if (v.kind == BoundValue::Kind::Scalar &&
        v.scalar.kind() == Value::Kind::Boolean)
        return to_truth(v.scalar.as_boolean());
    ++stats.type_mismatches;
    return Truth::Unknown;
}

}  // namespace

BoundValue eval_expr(const ExprPtr& e, const Binding& binding,
                     const PropertyGraph& g, ExecStats& stats) {
    switch (e->kind) {
        case Expr::Kind::Variable:
            return binding.at(e->var);
        case Expr::Kind::PropAccess: {
            const BoundValue& base = binding.at(e->var);
            const PropertyMap* props = nullptr;
            if (base.kind == BoundValue::Kind::Node) props = &g.node(base.node).props;
            if (base.kind == BoundValue::Kind::Edge) props = &g.edge(base.edge).props;
            if (!props) return BoundValue::of_scalar(Value::null());
            auto it = props->find(e->prop);
            if (it == props->end()) return BoundValue::of_scalar(Value::null());
            return BoundValue::of_scalar(it->second);
        }
        case Expr::Kind::Literal:
            return BoundValue::of_scalar(e->literal);
        case Expr::Kind::List: {
            // The one list value properties support is a text list; anything
            // else has no storable shape and evaluates to Null.
            TextListT items;
            for (const auto& item : e->items) {
                BoundValue v = eval_expr(item, binding, g, stats);
                if (v.kind != BoundValue::Kind::Scalar ||
                    v.scalar.kind() != Value::Kind::Text) {
                    ++stats.type_mismatches;
                    return BoundValue::of_scalar(Value::null());
                }
                items.push_back(v.scalar.as_text());
            }
            return BoundValue::of_scalar(Value::text_list(std::move(items)));
        }
        case Expr::Kind::Paren:
            return eval_expr(e->lhs, binding, g, stats);
        case Expr::Kind::Cmp:
        case Expr::Kind::In:
        case Expr::Kind::And:
        case Expr::Kind::Or:
        case Expr::Kind::Not: {
            Truth t = eval_predicate(e, binding, g, stats);
            if (t == Truth::Unknown) return BoundValue::of_scalar(Value::null());
            return BoundValue::of_scalar(Value::boolean(t == Truth::True));
        }
    }
    return BoundValue::of_scalar(Value::null());
}

Truth eval_predicate(const ExprPtr& e, const Binding& binding,
                     const PropertyGraph& g, ExecStats& stats) {
    switch (e->kind) {
        case Expr::Kind::And:
            return truth_and(eval_predicate(e->lhs, binding, g, stats),
                             eval_predicate(e->rhs, binding, g, stats));
        case Expr::Kind::Or:
            return truth_or(eval_predicate(e->lhs, binding, g, stats),
                            eval_predicate(e->rhs, binding, g, stats));
        case Expr::Kind::Not:
            return truth_not(eval_predicate(e->lhs, binding, g, stats));
        case Expr::Kind::Paren:
            return eval_predicate(e->lhs, binding, g, stats);
        case Expr::Kind::Cmp: {
            BoundValue a = eval_expr(e->lhs, binding, g, stats);
            BoundValue b = eval_expr(e->rhs, binding, g, stats);
            switch (e->op) {
                case CmpOp::Eq: return equality(a, b);
                case CmpOp::Ne: return truth_not(equality(a, b));
                default: break;
            }
            std::optional<int> c = predicate_order(a, b, stats);
            if (!c) return Truth::Unknown;
            switch (e->op) {
                case CmpOp::Lt: return to_truth(*c < 0);
                case CmpOp::Le: return to_truth(*c <= 0);
                case CmpOp::Gt: return to_truth(*c > 0);
                case CmpOp::Ge: return to_truth(*c >= 0);
                default: return Truth::Unknown;
            }
        }
        case Expr::Kind::In: {
            BoundValue needle = eval_expr(e->lhs, binding, g, stats);
            if (needle.is_null_scalar()) return Truth::Unknown;
            bool saw_unknown = false;
            for (const auto& item : e->rhs->items) {
                Truth t = equality(needle, eval_expr(item, binding, g, stats));
                if (t == Truth::True) return Truth::True;
                if (t == Truth::Unknown) saw_unknown = true;
            }
            return saw_unknown ? Truth::Unknown : Truth::False;
        }
        default:
            return truth_of(eval_expr(e, binding, g, stats), stats);
    }
}

int order_compare(const BoundValue& a, const BoundValue& b) {
    auto rank = [](const BoundValue& v) {
        switch (v.kind) {
            case BoundValue::Kind::Node: return 4;
            case BoundValue::Kind::Edge: return 5;
            case BoundValue::Kind::Scalar:
                switch (v.scalar.kind()) {
                    case Value::Kind::Boolean: return 0;
                    case Value::Kind::Integer:
                    case Value::Kind::Float: return 1;
                    case Value::Kind::Text: return 2;
                    case Value::Kind::TextList: return 3;
                    case Value::Kind::Null: return 6;
                }
        }
        return 6;
    };
    int ra = rank(a);
    int rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    auto three_way = [](auto l, auto r) { return l < r ? -1 : l > r ? 1 : 0; };
    switch (ra) {
        case 0: return three_way(a.scalar.as_boolean(), b.scalar.as_boolean());
        case 1:
            if (a.scalar.kind() == Value::Kind::Integer &&
                b.scalar.kind() == Value::Kind::Integer)
                return three_way(a.scalar.as_integer(), b.scalar.as_integer());
            return three_way(a.scalar.numeric(), b.scalar.numeric());
        case 2: return three_way(a.scalar.as_text(), b.scalar.as_text());
        case 3: return three_way(a.scalar.as_text_list(), b.scalar.as_text_list());
        case 4: return three_way(a.node.v, b.node.v);
        case 5: return three_way(a.edge.v, b.edge.v);
        default: return 0;  // both Null
    }
}

namespace {

bool node_matches(const PropertyGraph& g, const NodePat& np, NodeId id) {
    const Node& n = g.node(id);
    for (const auto& label : np.labels)
        if (!n.labels.count(label)) return false;
    for (const auto& [key, want] : np.prop_map) {
        // Property-map matching is exact storage equality (the same rule the
        // index uses), and a Null literal matches nothing.
        if (want.is_null()) return false;
        auto it = n.props.find(key);
        if (it == n.props.end() || !(it->second == want)) return false;
    }
    return true;
}

class Matcher {
public:
    Matcher(const PropertyGraph& g, const std::vector<Pattern>& patterns,
            ExecStats& stats)
        : g_(g), patterns_(patterns), stats_(stats) {}

    std::vector<Binding> run(const Binding& start) {
        out_.clear();
        used_.clear();
        match_pattern(start, 0);
        return std::move(out_);
    }

private:
    const PropertyGraph& g_;
    const std::vector<Pattern>& patterns_;
    ExecStats& stats_;
    std::vector<Binding> out_;
    std::set<EdgeId> used_;  // edge uniqueness, scoped to one MATCH clause

    void match_pattern(Binding binding, std::size_t pi) {
        if (pi == patterns_.size()) {
            out_.push_back(std::move(binding));
            return;
        }
        const NodePat& np = patterns_[pi].nodes[0];
        if (np.var && binding.count(*np.var)) {
            const BoundValue& bv = binding.at(*np.var);
            if (bv.kind != BoundValue::Kind::Node) return;  // null-filled var
            if (!node_matches(g_, np, bv.node)) return;
            match_step(std::move(binding), pi, 0, bv.node);
            return;
        }
        for (NodeId id : seed_candidates(np)) {
            Binding next = binding;
            if (np.var) next[*np.var] = BoundValue::of_node(id);
            match_step(std::move(next), pi, 0, id);
        }
    }

    /// First-node candidates in ascending id order, via a declared index
    /// when the pattern pins an indexed label/property pair.
    std::vector<NodeId> seed_candidates(const NodePat& np) {
        std::vector<NodeId> out;
        for (const auto& label : np.labels) {
            for (const auto& [key, want] : np.prop_map) {
                if (!g_.has_index(label, key)) continue;
                ++stats_.index_seeks;
                for (NodeId id : g_.find_nodes(label, key, want))
                    if (node_matches(g_, np, id)) out.push_back(id);
                return out;
            }
        }
        ++stats_.scans;
        for (const auto& [id, n] : g_.nodes())
            if (node_matches(g_, np, id)) out.push_back(id);
        return out;
    }

    void match_step(Binding binding, std::size_t pi, std::size_t step,
                    NodeId current) {
        const Pattern& p = patterns_[pi];
        if (step == p.rels.size()) {
            match_pattern(std::move(binding), pi + 1);
            return;
        }
        const RelPat& rp = p.rels[step];
        const NodePat& np = p.nodes[step + 1];
        Direction dir = rp.dir == RelDir::LeftToRight  ? Direction::Out
                        : rp.dir == RelDir::RightToLeft ? Direction::In
                                                        : Direction::Both;
        std::optional<std::set<std::string>> filter;
        if (!rp.rel_types.empty())
            filter.emplace(rp.rel_types.begin(), rp.rel_types.end());
        for (EdgeId eid : g_.neighbors(current, dir, filter)) {
            if (used_.count(eid)) continue;
            const Edge& edge = g_.edge(eid);
            NodeId next = dir == Direction::Out  ? edge.dst
                          : dir == Direction::In ? edge.src
                          : (edge.src == current ? edge.dst : edge.src);
            if (!node_matches(g_, np, next)) continue;
            if (np.var) {
                auto it = binding.find(*np.var);
                if (it != binding.end()) {
                    if (it->second.kind != BoundValue::Kind::Node ||
                        !(it->second.node == next))
                        continue;
                }
            }
            Binding extended = binding;
            if (np.var) extended[*np.var] = BoundValue::of_node(next);
            if (rp.var) extended[*rp.var] = BoundValue::of_edge(eid);
            used_.insert(eid);
            match_step(std::move(extended), pi, step + 1, next);
            used_.erase(eid);
        }
    }
};

void apply_match(const PropertyGraph& g, const MatchClause& m,
                 std::vector<Binding>& rows, ExecStats& stats) {
    std::vector<Binding> next;
    Matcher matcher(g, m.patterns, stats);
    for (const Binding& row : rows) {
        std::vector<Binding> expanded = matcher.run(row);
        if (m.where) {
            std::vector<Binding> kept;
            for (Binding& b : expanded)
                if (eval_predicate(m.where, b, g, stats) == Truth::True)
                    kept.push_back(std::move(b));
            expanded = std::move(kept);
        }
        if (!expanded.empty()) {
            for (Binding& b : expanded) next.push_back(std::move(b));
        } else if (m.optional) {
            // Null-fill every name this clause would have introduced. The
            // WHERE above already participated, so a predicate that kills
            // all expansions still yields the null row.
            Binding filled = row;
            for (const Pattern& p : m.patterns) {
                for (const NodePat& np : p.nodes)
                    if (np.var && !row.count(*np.var))
                        filled[*np.var] = BoundValue::of_scalar(Value::null());
                for (const RelPat& rp : p.rels)
                    if (rp.var && !row.count(*rp.var))
                        filled[*rp.var] = BoundValue::of_scalar(Value::null());
            }
            next.push_back(std::move(filled));
        }
    }
    rows = std::move(next);
}

void apply_with(const PropertyGraph& g, const WithClause& w,
                std::vector<Binding>& rows, ExecStats& stats) {
    std::vector<Binding> next;
    for (const Binding& row : rows) {
        Binding projected;
        for (const ProjectionItem& item : w.items)
            projected[projection_name(item)] = eval_expr(item.expr, row, g, stats);
        if (w.where && eval_predicate(w.where, projected, g, stats) != Truth::True)
            continue;
        next.push_back(std::move(projected));
    }
    rows = std::move(next);
}

Cell materialize(const PropertyGraph& g, const BoundValue& bv) {
    switch (bv.kind) {
        case BoundValue::Kind::Node: {
            const Node& n = g.node(bv.node);
            return NodeCell{n.id.v, n.labels, n.props};
        }
        case BoundValue::Kind::Edge: {
            const Edge& e = g.edge(bv.edge);
            return EdgeCell{e.id.v, e.src.v, e.dst.v, e.rel_type, e.props};
        }
        case BoundValue::Kind::Scalar: return bv.scalar;
    }
    return Value::null();
}

}  // namespace

ResultTable execute(const PropertyGraph& g, const QueryAst& q, ExecStats* stats) {
    ExecStats local;
    ExecStats& st = stats ? *stats : local;

    std::vector<Binding> rows{Binding{}};
    for (const Clause& clause : q.clauses) {
        if (const auto* m = std::get_if<MatchClause>(&clause))
            apply_match(g, *m, rows, st);
        else
            apply_with(g, std::get<WithClause>(clause), rows, st);
    }

    struct OutRow {
        std::vector<BoundValue> cells;
        std::vector<BoundValue> keys;
    };
    std::vector<OutRow> out_rows;
    out_rows.reserve(rows.size());
    for (const Binding& row : rows) {
        OutRow r;
        Binding order_scope = row;
        for (const ProjectionItem& item : q.ret.items) {
            r.cells.push_back(eval_expr(item.expr, row, g, st));
            order_scope[projection_name(item)] = r.cells.back();
        }
        if (q.order_by)
            for (const OrderKey& key : q.order_by->keys)
                r.keys.push_back(eval_expr(key.expr, order_scope, g, st));
        out_rows.push_back(std::move(r));
    }

    if (q.order_by) {
        const auto& keys = q.order_by->keys;
        std::stable_sort(out_rows.begin(), out_rows.end(),
                         [&](const OutRow& a, const OutRow& b) {
                             for (std::size_t i = 0; i < keys.size(); ++i) {
                                 int c = order_compare(a.keys[i], b.keys[i]);
                                 if (c != 0)
                                     return keys[i].ascending ? c < 0 : c > 0;
                             }
                             return false;
                         });
    }

    ResultTable table;
    for (const ProjectionItem& item : q.ret.items)
        table.columns.push_back(projection_name(item));
    table.rows.reserve(out_rows.size());
    for (const OutRow& r : out_rows) {
        std::vector<Cell> cells;
        cells.reserve(r.cells.size());
        for (const BoundValue& bv : r.cells) cells.push_back(materialize(g, bv));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace marketgraph

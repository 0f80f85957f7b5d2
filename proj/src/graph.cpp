#include "marketgraph/graph.hpp"

#include <algorithm>

#include "marketgraph/errors.hpp"

namespace marketgraph {

const char* kind_name(Value::Kind k) {
    switch (k) {
        case Value::Kind::Null: return "Null";
        case Value::Kind::Text: return "Text";
        case Value::Kind::Integer: return "Integer";
        case Value::Kind::Float: return "Float";
        case Value::Kind::Boolean: return "Boolean";
        case Value::Kind::TextList: return "TextList";
    }
    return "?";
}

NodeId PropertyGraph::create_node(const std::set<std::string>& labels,
                                  PropertyMap props) {
    if (labels.empty()) throw EmptyLabelSet();
    NodeId id{next_node_id_++};
    Node n{id, labels, std::move(props)};
    index_insert(n);
    nodes_.emplace(id, std::move(n));
    out_.emplace(id, std::vector<EdgeId>{});
    in_.emplace(id, std::vector<EdgeId>{});
    return id;
}

EdgeId PropertyGraph::create_edge(NodeId src, const std::string& rel_type,
                                  NodeId dst, PropertyMap props) {
    if (!has_node(src)) throw UnknownNode(src.v);
    if (!has_node(dst)) throw UnknownNode(dst.v);
    EdgeId id{next_edge_id_++};
    edges_.emplace(id, Edge{id, src, dst, rel_type, std::move(props)});
    out_[src].push_back(id);
    in_[dst].push_back(id);
    return id;
}

void PropertyGraph::remove_edge(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw UnknownEdge(id.v);
    const Edge& e = it->second;
    auto drop = [id](std::vector<EdgeId>& xs) {
        xs.erase(std::remove(xs.begin(), xs.end(), id), xs.end());
    };
    drop(out_[e.src]);
    drop(in_[e.dst]);
    edges_.erase(it);
}

void PropertyGraph::remove_node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id.v);
    // copy: remove_edge mutates the adjacency lists we iterate
    std::set<EdgeId> incident;
    for (EdgeId e : out_[id]) incident.insert(e);
    for (EdgeId e : in_[id]) incident.insert(e);
    for (EdgeId e : incident) remove_edge(e);
    index_erase(it->second);
    out_.erase(id);
    in_.erase(id);
    nodes_.erase(it);
}

const Node& PropertyGraph::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id.v);
    return it->second;
}

const Edge& PropertyGraph::edge(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw UnknownEdge(id.v);
    return it->second;
}

void PropertyGraph::declare_index(const std::string& label,
                                  const std::string& prop) {
    IndexKey key{label, prop};
    if (indexes_.count(key)) return;
    IndexMap& m = indexes_[key];
    for (const auto& [id, n] : nodes_) {
        if (!n.labels.count(label)) continue;
        auto p = n.props.find(prop);
        if (p == n.props.end() || p->second.is_null()) continue;
        m[p->second].insert(id);
    }
}

bool PropertyGraph::has_index(const std::string& label,
                              const std::string& prop) const {
    return indexes_.count({label, prop}) != 0;
}

std::vector<std::pair<std::string, std::string>>
PropertyGraph::declared_indexes() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(indexes_.size());
    for (const auto& [key, m] : indexes_) out.push_back(key);
    return out;
}

std::set<NodeId> PropertyGraph::find_nodes(const std::string& label,
                                           const std::string& prop,
                                           const Value& value) const {
    std::set<NodeId> out;
    if (value.is_null()) return out;  // Null never matches equality
    auto idx = indexes_.find({label, prop});
    if (idx != indexes_.end()) {
        auto hit = idx->second.find(value);
        if (hit != idx->second.end()) return hit->second;
        return out;
    }
    for (const auto& [id, n] : nodes_) {
        if (!n.labels.count(label)) continue;
        auto p = n.props.find(prop);
        if (p != n.props.end() && p->second == value) out.insert(id);
    }
    return out;
}

std::vector<EdgeId> PropertyGraph::neighbors(
    NodeId n, Direction dir,
    const std::optional<std::set<std::string>>& rel_filter) const {
    if (!has_node(n)) throw UnknownNode(n.v);
    auto pass = [&](EdgeId id) {
        return !rel_filter || rel_filter->count(edges_.at(id).rel_type) != 0;
    };
    std::vector<EdgeId> out;
    if (dir == Direction::Out || dir == Direction::Both) {
        for (EdgeId id : out_.at(n))
            if (pass(id)) out.push_back(id);
    }
    if (dir == Direction::In || dir == Direction::Both) {
        for (EdgeId id : in_.at(n))
            if (pass(id)) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<std::string, std::size_t> PropertyGraph::label_histogram() const {
    std::map<std::string, std::size_t> h;
    for (const auto& [id, n] : nodes_)
        for (const auto& l : n.labels) ++h[l];
    return h;
}

std::map<std::string, std::size_t> PropertyGraph::rel_type_histogram() const {
    std::map<std::string, std::size_t> h;
    for (const auto& [id, e] : edges_) ++h[e.rel_type];
    return h;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

void fnv_u64(std::uint64_t& h, std::uint64_t x) { fnv_bytes(h, &x, 8); }

void fnv_str(std::uint64_t& h, const std::string& s) {
    fnv_u64(h, s.size());
    fnv_bytes(h, s.data(), s.size());
}

void fnv_value(std::uint64_t& h, const Value& v) {
    fnv_u64(h, static_cast<std::uint64_t>(v.kind()));
    switch (v.kind()) {
        case Value::Kind::Null: break;
        case Value::Kind::Text: fnv_str(h, v.as_text()); break;
        case Value::Kind::Integer:
            fnv_u64(h, static_cast<std::uint64_t>(v.as_integer()));
            break;
        case Value::Kind::Float: {
            double d = v.as_floating();
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(d));
            __builtin_memcpy(&bits, &d, 8);
            fnv_u64(h, bits);
            break;
        }
        case Value::Kind::Boolean: fnv_u64(h, v.as_boolean() ? 1 : 0); break;
        case Value::Kind::TextList:
            fnv_u64(h, v.as_text_list().size());
            for (const auto& s : v.as_text_list()) fnv_str(h, s);
            break;
    }
}

}  // namespace

std::uint64_t PropertyGraph::structural_hash() const {
    std::uint64_t h = kFnvOffset;
    fnv_u64(h, nodes_.size());
    for (const auto& [id, n] : nodes_) {
        fnv_u64(h, id.v);
        fnv_u64(h, n.labels.size());
        for (const auto& l : n.labels) fnv_str(h, l);
        fnv_u64(h, n.props.size());
        for (const auto& [k, v] : n.props) {
            fnv_str(h, k);
            fnv_value(h, v);
        }
    }
    fnv_u64(h, edges_.size());
    for (const auto& [id, e] : edges_) {
        fnv_u64(h, id.v);
        fnv_u64(h, e.src.v);
        fnv_u64(h, e.dst.v);
        fnv_str(h, e.rel_type);
        fnv_u64(h, e.props.size());
        for (const auto& [k, v] : e.props) {
            fnv_str(h, k);
            fnv_value(h, v);
        }
    }
    fnv_u64(h, indexes_.size());
    for (const auto& [key, m] : indexes_) {
        fnv_str(h, key.first);
        fnv_str(h, key.second);
    }
    return h;
}

void PropertyGraph::restore_id_counters(std::uint64_t next_node,
                                        std::uint64_t next_edge) {
    next_node_id_ = next_node;
    next_edge_id_ = next_edge;
}

void PropertyGraph::restore_node(Node n) {
    if (n.labels.empty()) throw EmptyLabelSet();
    NodeId id = n.id;
    index_insert(n);
    out_.emplace(id, std::vector<EdgeId>{});
    in_.emplace(id, std::vector<EdgeId>{});
    nodes_.emplace(id, std::move(n));
}

void PropertyGraph::restore_edge(Edge e) {
    if (!has_node(e.src)) throw UnknownNode(e.src.v);
    if (!has_node(e.dst)) throw UnknownNode(e.dst.v);
    EdgeId id = e.id;
    out_[e.src].push_back(id);
    in_[e.dst].push_back(id);
    edges_.emplace(id, std::move(e));
    // adjacency stays sorted: snapshot writes edges in ascending id order
}

void PropertyGraph::index_insert(const Node& n) {
    for (auto& [key, m] : indexes_) {
        if (!n.labels.count(key.first)) continue;
        auto p = n.props.find(key.second);
        if (p == n.props.end() || p->second.is_null()) continue;
        m[p->second].insert(n.id);
    }
}

void PropertyGraph::index_erase(const Node& n) {
    for (auto& [key, m] : indexes_) {
        if (!n.labels.count(key.first)) continue;
        auto p = n.props.find(key.second);
        if (p == n.props.end() || p->second.is_null()) continue;
        auto hit = m.find(p->second);
        if (hit != m.end()) {
            hit->second.erase(n.id);
            if (hit->second.empty()) m.erase(hit);
        }
    }
}

}  // namespace marketgraph

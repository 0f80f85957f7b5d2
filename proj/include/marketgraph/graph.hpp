#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "marketgraph/value.hpp"

namespace marketgraph {

struct NodeId {
    std::uint64_t v = 0;
    auto operator<=>(const NodeId&) const = default;
};
struct EdgeId {
    std::uint64_t v = 0;
    auto operator<=>(const EdgeId&) const = default;
};

using PropertyMap = std::map<std::string, Value>;

struct Node {
    NodeId id;
    std::set<std::string> labels;  // non-empty
    PropertyMap props;
};

struct Edge {
    EdgeId id;
    NodeId src;
    NodeId dst;
    std::string rel_type;  // exactly one
    PropertyMap props;
};

enum class Direction { Out, In, Both };

/// In-memory labeled property graph with per-node adjacency lists and
/// declared (label, property) equality indexes.
///
/// Ids ascend monotonically and are never reused, including after removal,
/// so ordered iteration over `nodes()` / `edges()` and the adjacency lists
/// (kept in ascending edge-id order) is deterministic for a given history.
///
/// Concurrency: many concurrent readers or one exclusive writer. The engine
/// does not lock internally; ingestion is the only writer phase and query
/// serving reads an immutable snapshot.
class PropertyGraph {
public:
    /// Throws EmptyLabelSet when labels is empty. Null-valued properties are
    /// stored but never enter an index.
    NodeId create_node(const std::set<std::string>& labels, PropertyMap props);

    /// Parallel edges of the same type and self-loops are permitted.
    /// Throws UnknownNode when either endpoint does not exist.
    EdgeId create_edge(NodeId src, const std::string& rel_type, NodeId dst,
                       PropertyMap props = {});

    void remove_edge(EdgeId id);
    /// Removes the node and every incident edge.
    void remove_node(NodeId id);

    bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
    bool has_edge(EdgeId id) const { return edges_.count(id) != 0; }
    const Node& node(NodeId id) const;
    const Edge& edge(EdgeId id) const;

    /// Declaring an existing index is a no-op. The index is built from a full
    /// scan and kept exact under later mutations.
    void declare_index(const std::string& label, const std::string& prop);
    bool has_index(const std::string& label, const std::string& prop) const;
    std::vector<std::pair<std::string, std::string>> declared_indexes() const;

    /// All nodes with `label` whose `prop` equals `value`. Null never matches.
    /// Uses the declared index when present, otherwise scans.
    std::set<NodeId> find_nodes(const std::string& label,
                                const std::string& prop,
                                const Value& value) const;

    /// Adjacent edges satisfying direction and the optional rel-type filter,
    /// in ascending edge-id order. Both is the deduplicated union, so a
    /// self-loop appears once. Throws UnknownNode.
    std::vector<EdgeId> neighbors(
        NodeId n, Direction dir,
        const std::optional<std::set<std::string>>& rel_filter = std::nullopt) const;

    const std::map<NodeId, Node>& nodes() const { return nodes_; }
    const std::map<EdgeId, Edge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::map<std::string, std::size_t> label_histogram() const;
    std::map<std::string, std::size_t> rel_type_histogram() const;

    /// Order-insensitive digest of the full graph content (ids, labels,
    /// types, properties, declared indexes). Equal content, equal hash.
    std::uint64_t structural_hash() const;

    // Snapshot support: id counters survive persist/load so ids are never
    // reused across the lifetime of a restored store either.
    std::uint64_t next_node_id() const { return next_node_id_; }
    std::uint64_t next_edge_id() const { return next_edge_id_; }
    void restore_id_counters(std::uint64_t next_node, std::uint64_t next_edge);
    /// Raw insert used by snapshot load; keeps the given id.
    void restore_node(Node n);
    void restore_edge(Edge e);

private:
    using IndexKey = std::pair<std::string, std::string>;
    using IndexMap = std::map<Value, std::set<NodeId>>;

    void index_insert(const Node& n);
    void index_erase(const Node& n);

    std::map<NodeId, Node> nodes_;
    std::map<EdgeId, Edge> edges_;
    std::map<NodeId, std::vector<EdgeId>> out_;
    std::map<NodeId, std::vector<EdgeId>> in_;
    std::map<IndexKey, IndexMap> indexes_;
    std::uint64_t next_node_id_ = 1;
    std::uint64_t next_edge_id_ = 1;
};

}  // namespace marketgraph

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "marketgraph/graph.hpp"

namespace marketgraph {

enum class ValueKind { Text, Integer, Float, Boolean, TextList };

const char* value_kind_name(ValueKind k);

struct PropertySpec {
    std::string name;
    ValueKind kind;
    bool required = false;  // identity key: must be present and non-Null
};

struct NodeTypeSpec {
    std::string label;
    std::vector<PropertySpec> properties;
    const PropertySpec* property(const std::string& name) const;
};

struct RelTypeSpec {
    std::string name;
    std::string src_label;
    std::string dst_label;
};

/// The market graph schema as data: node type and relationship inventories
/// with per-property value kinds and endpoint constraints. Immutable after
/// construction; freely shared.
class SchemaCatalog {
public:
    SchemaCatalog(std::vector<NodeTypeSpec> node_types,
                  std::vector<RelTypeSpec> rel_types);

    /// The stock-market catalog: 8 node types, 11 relationship types.
    static const SchemaCatalog& market();

    const std::vector<NodeTypeSpec>& node_types() const { return node_types_; }
    const std::vector<RelTypeSpec>& rel_types() const { return rel_types_; }
    const NodeTypeSpec* node_type(const std::string& label) const;
    const RelTypeSpec* rel_type(const std::string& name) const;

    /// Violations are data, not faults: unknown label, unknown property,
    /// wrong value kind, missing required property. Empty list means Ok.
    /// Float-kind properties accept Integer values (numeric family); the
    /// reverse coercion is a violation.
    std::vector<std::string> validate_node(const std::string& label,
                                           const PropertyMap& props) const;

    /// Ok (nullopt) iff the declared endpoint node types appear in the given
    /// label sets.
    std::optional<std::string> validate_edge(
        const std::string& rel_type, const std::set<std::string>& src_labels,
        const std::set<std::string>& dst_labels) const;

    /// Deterministic human/LLM-readable rendering of the whole catalog.
    std::string schema_text() const;

    /// Deterministic JSON document (pretty-printed, 2-space indent).
    std::string schema_json() const;

private:
    std::vector<NodeTypeSpec> node_types_;
    std::vector<RelTypeSpec> rel_types_;
};

}  // namespace marketgraph

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "marketgraph/value.hpp"

namespace marketgraph {

// Result cells are self-contained copies: a table stays valid after the
// graph that produced it mutates or goes away.

struct NodeCell {
    std::uint64_t id = 0;
    std::set<std::string> labels;
    std::map<std::string, Value> props;
};

struct EdgeCell {
    std::uint64_t id = 0;
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    std::string rel_type;
    std::map<std::string, Value> props;
};

using Cell = std::variant<Value, NodeCell, EdgeCell>;

bool cell_equal(const Cell& a, const Cell& b);
std::string cell_text(const Cell& c);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column_index(const std::string& name) const;  // npos when absent
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// {"columns": [...], "rows": [[cell, ...], ...]} with nodes and
    /// relationships as tagged objects. Deterministic for equal content.
    std::string to_json() const;

    /// Fixed-width text: header, rule, one line per row.
    std::string to_text() const;
};

bool table_equal(const ResultTable& a, const ResultTable& b);

/// Same columns, same rows as an unordered multiset. Row order is the one
/// thing ORDER BY controls, so equivalence checks that ignore it compare
/// with this.
bool table_multiset_equal(const ResultTable& a, const ResultTable& b);

}  // namespace marketgraph

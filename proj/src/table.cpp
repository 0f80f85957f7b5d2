#include "marketgraph/table.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "marketgraph/render.hpp"

namespace marketgraph {

namespace {

using nlohmann::json;

json value_json(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Null: return nullptr;
        case Value::Kind::Text: return v.as_text();
        case Value::Kind::Integer: return v.as_integer();
        case Value::Kind::Float: return v.as_floating();
        case Value::Kind::Boolean: return v.as_boolean();
        case Value::Kind::TextList: return v.as_text_list();
    }
    return nullptr;
}

json props_json(const std::map<std::string, Value>& props) {
    json out = json::object();
    for (const auto& [k, v] : props) out[k] = value_json(v);
    return out;
}

json cell_json(const Cell& c) {
    if (const auto* v = std::get_if<Value>(&c)) return value_json(*v);
    if (const auto* n = std::get_if<NodeCell>(&c)) {
        return json{{"type", "node"},
                    {"id", n->id},
                    {"labels", n->labels},
                    {"properties", props_json(n->props)}};
    }
    const auto& e = std::get<EdgeCell>(c);
    return json{{"type", "relationship"}, {"id", e.id},
                {"src", e.src},          {"dst", e.dst},
                {"rel_type", e.rel_type}, {"properties", props_json(e.props)}};
}

std::string row_key(const std::vector<Cell>& row) {
    json arr = json::array();
    for (const Cell& c : row) arr.push_back(cell_json(c));
    return arr.dump();
}

}  // namespace

bool cell_equal(const Cell& a, const Cell& b) {
    if (a.index() != b.index()) return false;
    if (const auto* av = std::get_if<Value>(&a)) return *av == std::get<Value>(b);
    if (const auto* an = std::get_if<NodeCell>(&a)) {
        const auto& bn = std::get<NodeCell>(b);
        return an->id == bn.id && an->labels == bn.labels && an->props == bn.props;
    }
    const auto& ae = std::get<EdgeCell>(a);
    const auto& be = std::get<EdgeCell>(b);
    return ae.id == be.id && ae.src == be.src && ae.dst == be.dst &&
           ae.rel_type == be.rel_type && ae.props == be.props;
}

std::string cell_text(const Cell& c) {
    if (const auto* v = std::get_if<Value>(&c)) return render_value(*v);
    std::ostringstream out;
    if (const auto* n = std::get_if<NodeCell>(&c)) {
        out << "(#" << n->id;
        for (const auto& label : n->labels) out << ":" << label;
        if (!n->props.empty()) {
            out << " {";
            bool first = true;
            for (const auto& [k, v] : n->props) {
                if (!first) out << ", ";
                first = false;
                out << k << ": " << render_value(v);
            }
            out << "}";
        }
        out << ")";
        return out.str();
    }
    const auto& e = std::get<EdgeCell>(c);
    out << "[#" << e.id << ":" << e.rel_type << " #" << e.src << "->#" << e.dst;
    if (!e.props.empty()) {
        out << " {";
        bool first = true;
        for (const auto& [k, v] : e.props) {
            if (!first) out << ", ";
            first = false;
            out << k << ": " << render_value(v);
        }
        out << "}";
    }
    out << "]";
    return out.str();
}

std::size_t ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    return npos;
}

std::string ResultTable::to_json() const {
    json doc;
    doc["columns"] = columns;
    json rows_json = json::array();
    for (const auto& row : rows) {
        json arr = json::array();
        for (const Cell& c : row) arr.push_back(cell_json(c));
        rows_json.push_back(std::move(arr));
    }
    doc["rows"] = std::move(rows_json);
    return doc.dump(2);
}

std::string ResultTable::to_text() const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    std::vector<std::vector<std::string>> texts;
    texts.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
        texts.push_back(std::move(line));
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) out << "  ";
            out << line[i];
            if (i + 1 < line.size())
                out << std::string(width[i] - line[i].size(), ' ');
        }
        out << "\n";
    };
    emit(columns);
    std::size_t total = 0;
    for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
    out << std::string(total, '-') << "\n";
    for (const auto& line : texts) emit(line);
    out << "(" << rows.size() << (rows.size() == 1 ? " row)" : " rows)") << "\n";
    return out.str();
}

bool table_equal(const ResultTable& a, const ResultTable& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].size() != b.rows[i].size()) return false;
        for (std::size_t j = 0; j < a.rows[i].size(); ++j)
            if (!cell_equal(a.rows[i][j], b.rows[i][j])) return false;
    }
    return true;
}

bool table_multiset_equal(const ResultTable& a, const ResultTable& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    std::vector<std::string> ka, kb;
    ka.reserve(a.rows.size());
    kb.reserve(b.rows.size());
    for (const auto& row : a.rows) ka.push_back(row_key(row));
    for (const auto& row : b.rows) kb.push_back(row_key(row));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

}  // namespace marketgraph

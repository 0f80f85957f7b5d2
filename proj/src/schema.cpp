#include "marketgraph/schema.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace marketgraph {

const char* value_kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::Text: return "Text";
        case ValueKind::Integer: return "Integer";
        case ValueKind::Float: return "Float";
        case ValueKind::Boolean: return "Boolean";
        case ValueKind::TextList: return "TextList";
    }
    return "?";
}

const PropertySpec* NodeTypeSpec::property(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

SchemaCatalog::SchemaCatalog(std::vector<NodeTypeSpec> node_types,
                             std::vector<RelTypeSpec> rel_types)
    : node_types_(std::move(node_types)), rel_types_(std::move(rel_types)) {}

const SchemaCatalog& SchemaCatalog::market() {
    static const SchemaCatalog catalog(
        {
            {"Company",
             {{"stock_code", ValueKind::Text, true},
              {"stock_nm", ValueKind::Text},
              {"stock_abbrv", ValueKind::Text},
              {"stock_nm_eng", ValueKind::Text},
              {"listing_dt", ValueKind::Text},
              {"compete_stock_nm_li", ValueKind::TextList},
              {"compete_stock_code_li", ValueKind::TextList},
              {"market_nm", ValueKind::Text},
              {"outstanding_shares", ValueKind::Integer},
              {"kospi200_item_yn", ValueKind::Boolean}}},
            {"Sector", {{"stock_sector_nm", ValueKind::Text, true}}},
            {"Indicator",
             {{"pbr", ValueKind::Float},
              {"per", ValueKind::Float},
              {"eps", ValueKind::Float}}},
            {"StockPrice",
             {{"stck_oprc", ValueKind::Float},
              {"stck_clpr", ValueKind::Float},
              {"stck_hgpr", ValueKind::Float},
              {"stck_lwpr", ValueKind::Float}}},
            {"FinancialStatements",
             {{"revenue", ValueKind::Float},
              {"operating_income", ValueKind::Float},
              {"net_income", ValueKind::Float},
              {"total_assets", ValueKind::Float},
              {"total_liabilities", ValueKind::Float},
              {"total_equity", ValueKind::Float},
              {"capital_stock", ValueKind::Float}}},
            {"Date",
             {{"date", ValueKind::Text, true},
              {"year", ValueKind::Integer},
              {"month", ValueKind::Integer},
              {"day", ValueKind::Integer}}},
            {"Quarter",
             {{"year", ValueKind::Integer, true},
              {"quarter", ValueKind::Integer, true}}},
            {"Year", {{"year", ValueKind::Integer, true}}},
        },
        {
            {"HAS_STOCK_PRICE", "Company", "StockPrice"},
            {"HAS_INDICATOR", "Company", "Indicator"},
            {"HAS_FINANCIAL_STATEMENTS", "Company", "FinancialStatements"},
            {"BELONGS_TO", "Company", "Sector"},
            {"COMPETES_WITH", "Company", "Company"},
            {"RECORDED_ON", "StockPrice", "Date"},
            {"MEASURED_ON", "Indicator", "Date"},
            {"FOR_QUARTER", "FinancialStatements", "Quarter"},
            {"FOR_YEAR", "FinancialStatements", "Year"},
            {"IN_YEAR", "Date", "Year"},
            {"IN_QUARTER", "Date", "Quarter"},
        });
    return catalog;
}

const NodeTypeSpec* SchemaCatalog::node_type(const std::string& label) const {
    for (const auto& nt : node_types_)
        if (nt.label == label) return &nt;
    return nullptr;
}

const RelTypeSpec* SchemaCatalog::rel_type(const std::string& name) const {
    for (const auto& rt : rel_types_)
        if (rt.name == name) return &rt;
    return nullptr;
}

namespace {

bool kind_matches(ValueKind expected, const Value& v) {
    switch (expected) {
        case ValueKind::Text: return v.kind() == Value::Kind::Text;
        case ValueKind::Integer: return v.kind() == Value::Kind::Integer;
        case ValueKind::Float: return v.is_numeric();
        case ValueKind::Boolean: return v.kind() == Value::Kind::Boolean;
        case ValueKind::TextList: return v.kind() == Value::Kind::TextList;
    }
    return false;
}

}  // namespace

std::vector<std::string> SchemaCatalog::validate_node(
    const std::string& label, const PropertyMap& props) const {
    std::vector<std::string> violations;
    const NodeTypeSpec* nt = node_type(label);
    if (nt == nullptr) {
        violations.push_back("unknown node label: " + label);
        return violations;
    }
    for (const auto& [name, value] : props) {
        const PropertySpec* ps = nt->property(name);
        if (ps == nullptr) {
            violations.push_back(label + ": unknown property: " + name);
            continue;
        }
        if (!value.is_null() && !kind_matches(ps->kind, value)) {
            violations.push_back(label + "." + name + ": expected " +
                                 value_kind_name(ps->kind) + ", got " +
                                 kind_name(value.kind()));
        }
    }
    for (const auto& ps : nt->properties) {
        if (!ps.required) continue;
        auto it = props.find(ps.name);
        if (it == props.end() || it->second.is_null())
            violations.push_back(label + ": missing required property: " + ps.name);
    }
    return violations;
}

std::optional<std::string> SchemaCatalog::validate_edge(
    const std::string& rel_type, const std::set<std::string>& src_labels,
    const std::set<std::string>& dst_labels) const {
    const RelTypeSpec* rt = this->rel_type(rel_type);
    if (rt == nullptr) return "unknown relationship type: " + rel_type;
    if (!src_labels.count(rt->src_label))
        return rel_type + ": source must be labeled " + rt->src_label;
    if (!dst_labels.count(rt->dst_label))
        return rel_type + ": destination must be labeled " + rt->dst_label;
    return std::nullopt;
}

std::string SchemaCatalog::schema_text() const {
    std::ostringstream out;
    out << "Node types:\n";
    for (const auto& nt : node_types_) {
        out << "  " << nt.label << "\n";
        for (const auto& ps : nt.properties) {
            out << "    " << ps.name << ": " << value_kind_name(ps.kind);
            if (ps.required) out << " (required)";
            out << "\n";
        }
    }
    out << "Relationship types:\n";
    for (const auto& rt : rel_types_) {
        out << "  " << rt.name << ": " << rt.src_label << " -> " << rt.dst_label
            << "\n";
    }
    return out.str();
}

std::string SchemaCatalog::schema_json() const {
    nlohmann::json doc;
    doc["node_types"] = nlohmann::json::array();
    for (const auto& nt : node_types_) {
        nlohmann::json props = nlohmann::json::array();
        for (const auto& ps : nt.properties) {
            props.push_back({{"name", ps.name},
                             {"kind", value_kind_name(ps.kind)},
                             {"required", ps.required}});
        }
        doc["node_types"].push_back({{"label", nt.label}, {"properties", props}});
    }
    doc["rel_types"] = nlohmann::json::array();
    for (const auto& rt : rel_types_) {
        doc["rel_types"].push_back(
            {{"name", rt.name}, {"src", rt.src_label}, {"dst", rt.dst_label}});
    }
    return doc.dump(2);
}

}  // namespace marketgraph

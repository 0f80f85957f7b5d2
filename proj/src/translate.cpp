#include "marketgraph/translate.hpp"

#include <algorithm>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "marketgraph/errors.hpp"
#include "marketgraph/parser.hpp"
#include "marketgraph/records.hpp"
#include "marketgraph/render.hpp"

namespace marketgraph {

namespace {

std::string lowered(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

NodeId resolve_company(const PropertyGraph& g, const CompanyRef& ref) {
    if (ref.resolved_id && g.has_node(*ref.resolved_id)) return *ref.resolved_id;
    if (ref.code) {
        auto hits = g.find_nodes("Company", "stock_code", Value::text(*ref.code));
        if (!hits.empty()) return *hits.begin();
    }
    if (ref.name) {
        std::string want = lowered(*ref.name);
        for (const auto& [id, node] : g.nodes()) {
            if (!node.labels.count("Company")) continue;
            for (const char* prop :
                 {"stock_code", "stock_nm", "stock_abbrv", "stock_nm_eng"}) {
                auto it = node.props.find(prop);
                if (it != node.props.end() &&
                    it->second.kind() == Value::Kind::Text &&
                    lowered(it->second.as_text()) == want)
                    return id;
            }
        }
    }
    throw EntityNotFound(ref.code ? *ref.code : ref.name.value_or("<empty ref>"));
}

NodeId resolve_sector(const PropertyGraph& g, const SectorRef& ref) {
    if (ref.resolved_id && g.has_node(*ref.resolved_id)) return *ref.resolved_id;
    auto hits = g.find_nodes("Sector", "stock_sector_nm", Value::text(ref.name));
    if (!hits.empty()) return *hits.begin();
    std::string want = lowered(ref.name);
    for (const auto& [id, node] : g.nodes()) {
        if (!node.labels.count("Sector")) continue;
        auto it = node.props.find("stock_sector_nm");
        if (it != node.props.end() && it->second.kind() == Value::Kind::Text &&
            lowered(it->second.as_text()) == want)
            return id;
    }
    throw EntityNotFound(ref.name);
}

std::string node_text(const PropertyGraph& g, NodeId id, const char* prop) {
    const Node& n = g.node(id);
    auto it = n.props.find(prop);
    if (it == n.props.end() || it->second.kind() != Value::Kind::Text) return "";
    return it->second.as_text();
}

/// Column prefix from a company abbreviation: lowercase, non-alphanumerics
/// collapse to single underscores.
std::string sanitize_prefix(const std::string& abbrv) {
    std::string out;
    for (char c : abbrv) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (alnum)
            out += c;
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    if (out.empty()) out = "company";
    if (out.front() >= '0' && out.front() <= '9') out = "c_" + out;
    return out;
}

std::string unique_prefix(const std::string& base, std::set<std::string>& used) {
    std::string candidate = base;
    int n = 2;
    while (!used.insert(candidate).second)
        candidate = base + "_" + std::to_string(n++);
    return candidate;
}

std::string year_list(const std::vector<std::int64_t>& years) {
    std::string out = "[";
    for (std::size_t i = 0; i < years.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(years[i]);
    }
    return out + "]";
}

std::string quoted_text(const std::string& text) {
    return render_value(Value::text(text));
}

/// Parse and bind-check emitted text; any failure here is a template bug
/// surfaced as TemplateGap rather than a raw parse error.
TranslationResult finish(QuestionIntent intent, std::string text,
                         const SchemaCatalog& catalog,
                         std::vector<std::string> notes) {
    QueryAst ast;
    try {
        ast = parse(text);
    } catch (const EngineError& e) {
        throw TemplateGap(std::string("template output does not parse: ") +
                          e.what());
    }
    auto errors = bind_errors(ast, catalog);
    if (!errors.empty())
        throw TemplateGap("template output references unknown names: " +
                          join(errors, "; "));
    TranslationResult result;
    result.intent = std::move(intent);
    result.query_text = std::move(text);
    result.ast = std::move(ast);
    result.notes = std::move(notes);
    return result;
}

std::vector<Metric> effective_metrics(const CompetitorFinancialComparison& c,
                                      std::vector<std::string>& notes) {
    if (!c.metrics.empty()) return c.metrics;
    notes.push_back(
        "metrics defaulted to revenue, operating_income, net_income");
    return {Metric::Revenue, Metric::OperatingIncome, Metric::NetIncome};
}

TranslationResult translate_comparison(
    const CompetitorFinancialComparison& intent, const PropertyGraph& g,
    const SchemaCatalog& catalog) {
    if (intent.years.empty())
        throw TemplateGap("comparison intent carries no years");
    std::vector<std::string> notes;
    std::vector<Metric> metrics = effective_metrics(intent, notes);

    NodeId anchor = resolve_company(g, intent.anchor);
    std::set<std::string> used_prefixes;
    std::string anchor_prefix = unique_prefix(
        sanitize_prefix(node_text(g, anchor, "stock_abbrv")), used_prefixes);

    auto projections = [&](const std::string& var, const std::string& fs,
                           const std::string& prefix) {
        std::string out = ", " + var + ".stock_abbrv AS " + prefix +
                          "_stock_abbrv";
        for (Metric m : metrics)
            out += std::string(", ") + fs + "." + metric_property(m) + " AS " +
                   prefix + "_" + metric_property(m);
        return out;
    };

    std::string text;
    std::string ret = "RETURN y.year AS year";

    if (intent.competitors.empty()) {
        // the question names no competitor, so the graph supplies them
        notes.push_back("competitors resolved via COMPETES_WITH traversal");
        std::string code = node_text(g, anchor, "stock_code");
        text += "MATCH (c1:Company {stock_code: " + quoted_text(code) +
                "})-[:COMPETES_WITH]->(c2:Company)\n";
        text +=
            "MATCH (c1)-[:HAS_FINANCIAL_STATEMENTS]->"
            "(fs1:FinancialStatements)-[:FOR_YEAR]->(y:Year)\n";
        text +=
            "MATCH (c2)-[:HAS_FINANCIAL_STATEMENTS]->"
            "(fs2:FinancialStatements)-[:FOR_YEAR]->(y)\n";
        text += "WHERE y.year IN " + year_list(intent.years) + "\n";
        ret += projections("c1", "fs1", anchor_prefix);
        ret += ", c2.stock_code AS competitor_stock_code";
        ret += projections("c2", "fs2", "competitor");
        text += ret + "\n";
        text += "ORDER BY y.year ASC, c2.stock_code ASC";
        return finish(intent, std::move(text), catalog, std::move(notes));
    }

    std::vector<NodeId> companies{anchor};
    for (const CompanyRef& ref : intent.competitors)
        companies.push_back(resolve_company(g, ref));

    for (std::size_t i = 0; i < companies.size(); ++i) {
        std::string var = "c" + std::to_string(i + 1);
        std::string fs = "fs" + std::to_string(i + 1);
        std::string code = node_text(g, companies[i], "stock_code");
        text += "MATCH (" + var + ":Company {stock_code: " + quoted_text(code) +
                "})-[:HAS_FINANCIAL_STATEMENTS]->(" + fs +
                ":FinancialStatements)-[:FOR_YEAR]->" +
                (i == 0 ? "(y:Year)" : "(y)") + "\n";
        std::string prefix =
            i == 0 ? anchor_prefix
                   : unique_prefix(sanitize_prefix(node_text(
                                       g, companies[i], "stock_abbrv")),
                                   used_prefixes);
        ret += projections(var, fs, prefix);
    }
    text += "WHERE y.year IN " + year_list(intent.years) + "\n";
    text += ret + "\n";
    text += "ORDER BY y.year ASC";
    return finish(intent, std::move(text), catalog, std::move(notes));
}

TranslationResult translate_screen(const SectorIndicatorScreen& intent,
                                   const PropertyGraph& g,
                                   const SchemaCatalog& catalog) {
    if (intent.years.empty()) throw TemplateGap("screen intent carries no years");
    std::vector<std::string> notes;
    std::string predicate = intent.predicate;
    if (predicate.empty()) predicate = default_screen_predicate();
    if (predicate == default_screen_predicate())
        notes.push_back(
            "default screen thresholds applied: per < 10, pbr < 1, eps > 0");

    std::string text;
    if (const CompanyRef* company = std::get_if<CompanyRef>(&intent.anchor)) {
        NodeId anchor = resolve_company(g, *company);
        std::string code = node_text(g, anchor, "stock_code");
        text += "MATCH (a:Company {stock_code: " + quoted_text(code) +
                "})-[:BELONGS_TO]->(s:Sector)<-[:BELONGS_TO]-(c:Company)\n";
        text += "WHERE c.stock_code <> a.stock_code\n";
    } else {
        const SectorRef& sector = std::get<SectorRef>(intent.anchor);
        NodeId anchor = resolve_sector(g, sector);
        std::string name = node_text(g, anchor, "stock_sector_nm");
        text += "MATCH (s:Sector {stock_sector_nm: " + quoted_text(name) +
                "})<-[:BELONGS_TO]-(c:Company)\n";
    }
    text += "WITH c\n";
    text += "MATCH (c)-[:HAS_INDICATOR]->(ind:Indicator)-[:MEASURED_ON]->(d:Date)\n";
    text += "WHERE d.year IN " + year_list(intent.years) + "\n";
    text += "WITH c, ind, d\n";
    text += "WHERE " + predicate + "\n";
    text +=
        "RETURN c.stock_code AS stock_code, c.stock_abbrv AS stock_abbrv, "
        "d.year AS year, ind.per AS per, ind.pbr AS pbr, ind.eps AS eps\n";
    text += "ORDER BY d.year ASC, ind.per ASC, ind.pbr ASC, ind.eps DESC";
    return finish(intent, std::move(text), catalog, std::move(notes));
}

TranslationResult translate_price(const PriceLookup& intent,
                                  const PropertyGraph& g,
                                  const SchemaCatalog& catalog) {
    if (!valid_date_text(intent.date)) throw BadDate(intent.date);
    NodeId company = resolve_company(g, intent.company);
    std::string code = node_text(g, company, "stock_code");
    std::string text;
    text += "MATCH (c:Company {stock_code: " + quoted_text(code) +
            "})-[:HAS_STOCK_PRICE]->(sp:StockPrice)-[:RECORDED_ON]->"
            "(d:Date {date: " + quoted_text(intent.date) + "})\n";
    text += "OPTIONAL MATCH (d)-[:IN_YEAR]->(y:Year)\n";
    text += "OPTIONAL MATCH (d)-[:IN_QUARTER]->(q:Quarter)\n";
    text +=
        "RETURN c.stock_abbrv AS stock_abbrv, d.date AS date, "
        "sp.stck_oprc AS open, sp.stck_clpr AS close, sp.stck_hgpr AS high, "
        "sp.stck_lwpr AS low, y.year AS year, q.quarter AS quarter";
    return finish(intent, std::move(text), catalog, {});
}

void walk_expr(const ExprPtr& e, const std::set<std::string>& known_props,
               std::vector<std::string>& out, std::set<std::string>& seen) {
    if (!e) return;
    if (e->kind == Expr::Kind::PropAccess && !known_props.count(e->prop)) {
        std::string msg = "unknown property " + e->prop;
        if (seen.insert(msg).second) out.push_back(msg);
    }
    for (const ExprPtr& item : e->items) walk_expr(item, known_props, out, seen);
    walk_expr(e->lhs, known_props, out, seen);
    walk_expr(e->rhs, known_props, out, seen);
}

}  // namespace

TranslationResult translate(const QuestionIntent& intent,
                            const PropertyGraph& g,
                            const SchemaCatalog& catalog) {
    if (const auto* c = std::get_if<CompetitorFinancialComparison>(&intent))
        return translate_comparison(*c, g, catalog);
    if (const auto* s = std::get_if<SectorIndicatorScreen>(&intent))
        return translate_screen(*s, g, catalog);
    if (const auto* p = std::get_if<PriceLookup>(&intent))
        return translate_price(*p, g, catalog);
    throw TemplateGap("unsupported question: " +
                      std::get<Unsupported>(intent).reason);
}

std::vector<std::string> bind_errors(const QueryAst& ast,
                                     const SchemaCatalog& catalog) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto report = [&](std::string msg) {
        if (seen.insert(msg).second) out.push_back(std::move(msg));
    };

    std::set<std::string> known_props;
    for (const NodeTypeSpec& nt : catalog.node_types())
        for (const PropertySpec& p : nt.properties) known_props.insert(p.name);

    auto check_pattern = [&](const Pattern& pattern) {
        for (const NodePat& n : pattern.nodes) {
            for (const std::string& label : n.labels)
                if (!catalog.node_type(label)) report("unknown label " + label);
            for (const auto& [prop, value] : n.prop_map)
                if (!known_props.count(prop)) report("unknown property " + prop);
        }
        for (const RelPat& r : pattern.rels)
            for (const std::string& type : r.rel_types)
                if (!catalog.rel_type(type))
                    report("unknown relationship type " + type);
    };
    auto check_expr = [&](const ExprPtr& e) {
        walk_expr(e, known_props, out, seen);
    };

    for (const Clause& clause : ast.clauses) {
        if (const auto* m = std::get_if<MatchClause>(&clause)) {
            for (const Pattern& p : m->patterns) check_pattern(p);
            check_expr(m->where);
        } else {
            const auto& w = std::get<WithClause>(clause);
            for (const ProjectionItem& item : w.items) check_expr(item.expr);
            check_expr(w.where);
        }
    }
    for (const ProjectionItem& item : ast.ret.items) check_expr(item.expr);
    if (ast.order_by)
        for (const OrderKey& key : ast.order_by->keys) check_expr(key.expr);
    return out;
}

const std::string& translation_rules_text() {
    static const std::string text =
        "Emit exactly one query in the supported subset: MATCH, OPTIONAL "
        "MATCH, WHERE, WITH, RETURN, ORDER BY.\n"
        "Use only node labels, relationship types, and properties from the "
        "schema given in this request.\n"
        "Financial comparison: match each company by stock_code, follow "
        "HAS_FINANCIAL_STATEMENTS to FinancialStatements and FOR_YEAR to a "
        "shared Year variable y, filter y.year IN [years], alias every "
        "returned column, ORDER BY y.year ASC.\n"
        "Sector screen: follow BELONGS_TO from the anchor company to its "
        "Sector and back to peer companies, exclude the anchor by "
        "stock_code, follow HAS_INDICATOR and MEASURED_ON, filter d.year IN "
        "[years] and (ind.per < 10 OR ind.pbr < 1 OR ind.eps > 0), RETURN "
        "stock_code, stock_abbrv, year, per, pbr, eps, ORDER BY d.year ASC, "
        "ind.per ASC, ind.pbr ASC, ind.eps DESC.\n"
        "Price lookup: match the company by stock_code, HAS_STOCK_PRICE to "
        "StockPrice, RECORDED_ON to the Date by date text, OPTIONAL MATCH "
        "the date's IN_YEAR and IN_QUARTER context.\n";
    return text;
}

std::string external_generate(const std::string& question,
                              const std::string& schema_text,
                              const BackendConfig& config) {
    const std::string scheme = "http://";
    if (config.url.rfind(scheme, 0) != 0)
        throw BackendUnreachable("only http:// backend URLs are supported: " +
                                 config.url);
    std::string rest = config.url.substr(scheme.size());
    std::size_t slash = rest.find('/');
    std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : rest.substr(slash);

    httplib::Client client(scheme + host);
    client.set_connection_timeout(config.timeout_s, 0);
    client.set_read_timeout(config.timeout_s, 0);
    client.set_write_timeout(config.timeout_s, 0);

    nlohmann::json request{{"schema", schema_text},
                           {"question", question},
                           {"rules", translation_rules_text()}};
    auto res = client.Post(path, request.dump(), "application/json");
    if (!res) {
        httplib::Error err = res.error();
        if (err == httplib::Error::ConnectionTimeout ||
            err == httplib::Error::Read)
            throw BackendTimeout("backend at " + config.url +
                                 " timed out after " +
                                 std::to_string(config.timeout_s) + " s");
        throw BackendUnreachable("backend at " + config.url +
                                 " unreachable: " + httplib::to_string(err));
    }
    if (res->status != 200)
        throw BackendUnreachable("backend at " + config.url +
                                 " returned HTTP " +
                                 std::to_string(res->status));
    auto doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("query") ||
        !doc["query"].is_string())
        throw GeneratedQueryInvalid(
            "backend response is not a {\"query\": text} object");
    return doc["query"].get<std::string>();
}

TranslationResult validate_generated(const QuestionIntent& intent,
                                     const std::string& query_text,
                                     const SchemaCatalog& catalog) {
    QueryAst ast;
    try {
        ast = parse(query_text);
    } catch (const EngineError& e) {
        throw GeneratedQueryInvalid(
            std::string("generated query does not parse: ") + e.what());
    }
    auto errors = bind_errors(ast, catalog);
    if (!errors.empty())
        throw GeneratedQueryInvalid(
            "generated query references unknown names: " + join(errors, "; "));
    TranslationResult result;
    result.intent = intent;
    result.query_text = query_text;
    result.ast = std::move(ast);
    result.notes = {"query produced by external backend"};
    return result;
}

}  // namespace marketgraph

#include "marketgraph/ingest.hpp"

#include <filesystem>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "marketgraph/csv.hpp"
#include "marketgraph/errors.hpp"

namespace marketgraph {

namespace {

/// Create src-[type]->dst unless that exact edge already exists.
void link_once(PropertyGraph& g, NodeId src, const std::string& type, NodeId dst) {
    for (EdgeId eid : g.neighbors(src, Direction::Out, {{type}}))
        if (g.edge(eid).dst == dst) return;
    g.create_edge(src, type, dst);
}

std::optional<NodeId> find_company(const PropertyGraph& g, const std::string& code) {
    auto hits = g.find_nodes("Company", "stock_code", Value::text(code));
    if (hits.empty()) return std::nullopt;
    return *hits.begin();
}

/// Schema gate shared by every node constructor below.
bool passes_schema(const SchemaCatalog& catalog, const std::string& label,
                   const PropertyMap& props, const RecordIssue& where,
                   std::vector<RecordIssue>& rejected) {
    auto violations = catalog.validate_node(label, props);
    if (violations.empty()) return true;
    rejected.push_back({where.file, where.line, "schema: " + violations.front()});
    return false;
}

}  // namespace

void IngestReport::merge(IngestReport&& other) {
    loaded += other.loaded;
    for (auto& issue : other.rejected) rejected.push_back(std::move(issue));
    for (auto& issue : other.warnings) warnings.push_back(std::move(issue));
    for (auto& entry : other.unresolved_competitors)
        unresolved_competitors.push_back(std::move(entry));
}

std::string IngestReport::to_json() const {
    nlohmann::json doc;
    doc["loaded"] = loaded;
    doc["rejected"] = nlohmann::json::array();
    for (const auto& issue : rejected)
        doc["rejected"].push_back({{"file", issue.file},
                                   {"line", issue.line},
                                   {"reason", issue.reason}});
    doc["unresolved_competitors"] = unresolved_competitors;
    doc["warnings"] = nlohmann::json::array();
    for (const auto& issue : warnings)
        doc["warnings"].push_back({{"file", issue.file},
                                   {"line", issue.line},
                                   {"reason", issue.reason}});
    return doc.dump(2);
}

void declare_market_indexes(PropertyGraph& g) {
    g.declare_index("Company", "stock_code");
    g.declare_index("Company", "stock_abbrv");
    g.declare_index("Sector", "stock_sector_nm");
    g.declare_index("Date", "date");
    g.declare_index("Year", "year");
}

NodeId year_node(PropertyGraph& g, std::int64_t year) {
    auto hits = g.find_nodes("Year", "year", Value::integer(year));
    if (!hits.empty()) return *hits.begin();
    return g.create_node({"Year"}, {{"year", Value::integer(year)}});
}

NodeId quarter_node(PropertyGraph& g, std::int64_t year, std::int64_t quarter) {
    for (NodeId id : g.find_nodes("Quarter", "year", Value::integer(year))) {
        auto it = g.node(id).props.find("quarter");
        if (it != g.node(id).props.end() &&
            it->second == Value::integer(quarter))
            return id;
    }
    return g.create_node({"Quarter"}, {{"year", Value::integer(year)},
                                       {"quarter", Value::integer(quarter)}});
}

NodeId build_calendar(PropertyGraph& g, const std::string& date_text) {
    DateParts parts = date_parts(date_text);  // throws BadDate

    NodeId date_id;
    auto hits = g.find_nodes("Date", "date", Value::text(date_text));
    if (!hits.empty()) {
        date_id = *hits.begin();
    } else {
        date_id = g.create_node({"Date"},
                                {{"date", Value::text(date_text)},
                                 {"year", Value::integer(parts.year)},
                                 {"month", Value::integer(parts.month)},
                                 {"day", Value::integer(parts.day)}});
    }
    link_once(g, date_id, "IN_YEAR", year_node(g, parts.year));
    link_once(g, date_id, "IN_QUARTER", quarter_node(g, parts.year, parts.quarter));
    return date_id;
}

IngestReport ingest_companies(PropertyGraph& g, const SchemaCatalog& catalog,
                              const std::vector<CompanyRecord>& records) {
    IngestReport report;

    // names known in this batch, so mutual competitor references resolve to
    // names even before both nodes exist (last duplicate wins, like nodes do)
    std::map<std::string, std::string> batch_names;
    for (const auto& r : records) batch_names[r.stock_code] = r.stock_nm;

    for (const auto& r : records) {
        RecordIssue where{r.source_file, r.source_line, ""};
        if (auto reason = validate(r)) {
            report.rejected.push_back({where.file, where.line, *reason});
            continue;
        }

        PropertyMap props{{"stock_code", Value::text(r.stock_code)},
                          {"stock_nm", Value::text(r.stock_nm)},
                          {"stock_abbrv", Value::text(r.stock_abbrv)},
                          {"stock_nm_eng", Value::text(r.stock_nm_eng)},
                          {"listing_dt", Value::text(r.listing_dt)},
                          {"market_nm", Value::text(r.market_nm)},
                          {"outstanding_shares", Value::integer(r.outstanding_shares)},
                          {"kospi200_item_yn", Value::boolean(r.kospi200_item_yn)}};
        if (!r.competitors.empty()) {
            props["compete_stock_code_li"] = Value::text_list(r.competitors);
            std::vector<std::string> names;
            for (const auto& code : r.competitors) {
                auto batch_it = batch_names.find(code);
                if (batch_it != batch_names.end()) {
                    names.push_back(batch_it->second);
                } else if (auto target = find_company(g, code)) {
                    auto it = g.node(*target).props.find("stock_nm");
                    if (it != g.node(*target).props.end())
                        names.push_back(it->second.as_text());
                }
            }
            if (!names.empty()) props["compete_stock_nm_li"] = Value::text_list(names);
        }
        if (!passes_schema(catalog, "Company", props, where, report.rejected))
            continue;

        if (auto existing = find_company(g, r.stock_code)) {
            g.remove_node(*existing);
            report.warnings.push_back(
                {where.file, where.line,
                 "replaced existing company " + r.stock_code});
        }
        NodeId company = g.create_node({"Company"}, std::move(props));

        PropertyMap sector_props{{"stock_sector_nm", Value::text(r.sector)}};
        auto sector_hits =
            g.find_nodes("Sector", "stock_sector_nm", Value::text(r.sector));
        NodeId sector = sector_hits.empty()
                            ? g.create_node({"Sector"}, std::move(sector_props))
                            : *sector_hits.begin();
        link_once(g, company, "BELONGS_TO", sector);
        ++report.loaded;
    }

    // resolution pass over the whole graph: wiring is symmetric no matter
    // which side of a pair loaded first, or in which batch
    std::set<std::string> unresolved;
    for (const auto& [id, node] : g.nodes()) {
        if (!node.labels.count("Company")) continue;
        auto it = node.props.find("compete_stock_code_li");
        if (it == node.props.end() || it->second.is_null()) continue;
        const std::string& own_code = node.props.at("stock_code").as_text();
        for (const auto& code : it->second.as_text_list()) {
            auto target = find_company(g, code);
            if (!target) {
                unresolved.insert(own_code + " -> " + code);
                continue;
            }
            if (*target == id) continue;  // self-reference, nothing to wire
            link_once(g, id, "COMPETES_WITH", *target);
            link_once(g, *target, "COMPETES_WITH", id);
        }
    }
    report.unresolved_competitors.assign(unresolved.begin(), unresolved.end());
    return report;
}

IngestReport ingest_timeseries(PropertyGraph& g, const SchemaCatalog& catalog,
                               const std::vector<DailyPriceRecord>& prices,
                               const std::vector<IndicatorRecord>& indicators,
                               const std::vector<FinStatementRecord>& statements) {
    IngestReport report;

    // (stock_code, date) -> StockPrice node, seeded from the graph so
    // last-wins replacement also sees earlier ingest passes
    std::map<std::pair<std::string, std::string>, NodeId> price_index;
    for (const auto& [id, node] : g.nodes()) {
        if (!node.labels.count("Company")) continue;
        const std::string& code = node.props.at("stock_code").as_text();
        for (EdgeId eid : g.neighbors(id, Direction::Out, {{"HAS_STOCK_PRICE"}})) {
            NodeId sp = g.edge(eid).dst;
            for (EdgeId rid : g.neighbors(sp, Direction::Out, {{"RECORDED_ON"}})) {
                const Node& date = g.node(g.edge(rid).dst);
                price_index[{code, date.props.at("date").as_text()}] = sp;
            }
        }
    }

    for (const auto& r : prices) {
        RecordIssue where{r.source_file, r.source_line, ""};
        if (auto reason = validate(r)) {
            report.rejected.push_back({where.file, where.line, *reason});
            continue;
        }
        auto company = find_company(g, r.stock_code);
        if (!company) {
            report.rejected.push_back(
                {where.file, where.line, "unknown stock_code " + r.stock_code});
            continue;
        }
        PropertyMap props{{"stck_oprc", Value::floating(r.open)},
                          {"stck_clpr", Value::floating(r.close)},
                          {"stck_hgpr", Value::floating(r.high)},
                          {"stck_lwpr", Value::floating(r.low)}};
        if (!passes_schema(catalog, "StockPrice", props, where, report.rejected))
            continue;

        auto key = std::make_pair(r.stock_code, r.date);
        if (auto it = price_index.find(key); it != price_index.end()) {
            g.remove_node(it->second);
            report.warnings.push_back(
                {where.file, where.line,
                 "replaced price for " + r.stock_code + " on " + r.date});
        }
        NodeId sp = g.create_node({"StockPrice"}, std::move(props));
        g.create_edge(*company, "HAS_STOCK_PRICE", sp);
        g.create_edge(sp, "RECORDED_ON", build_calendar(g, r.date));
        price_index[key] = sp;
        ++report.loaded;
    }

    for (const auto& r : indicators) {
        RecordIssue where{r.source_file, r.source_line, ""};
        if (auto reason = validate(r)) {
            report.rejected.push_back({where.file, where.line, *reason});
            continue;
        }
        auto company = find_company(g, r.stock_code);
        if (!company) {
            report.rejected.push_back(
                {where.file, where.line, "unknown stock_code " + r.stock_code});
            continue;
        }
        PropertyMap props;
        if (r.per) props["per"] = Value::floating(*r.per);
        if (r.pbr) props["pbr"] = Value::floating(*r.pbr);
        if (r.eps) props["eps"] = Value::floating(*r.eps);
        if (!passes_schema(catalog, "Indicator", props, where, report.rejected))
            continue;
        NodeId ind = g.create_node({"Indicator"}, std::move(props));
        g.create_edge(*company, "HAS_INDICATOR", ind);
        g.create_edge(ind, "MEASURED_ON", build_calendar(g, r.date));
        ++report.loaded;
    }

    for (const auto& r : statements) {
        RecordIssue where{r.source_file, r.source_line, ""};
        if (auto reason = validate(r)) {
            report.rejected.push_back({where.file, where.line, *reason});
            continue;
        }
        auto company = find_company(g, r.stock_code);
        if (!company) {
            report.rejected.push_back(
                {where.file, where.line, "unknown stock_code " + r.stock_code});
            continue;
        }
        PropertyMap props;
        auto metric = [&](const char* key, const std::optional<double>& v) {
            if (v) props[key] = Value::floating(*v);
        };
        metric("revenue", r.revenue);
        metric("operating_income", r.operating_income);
        metric("net_income", r.net_income);
        metric("total_assets", r.total_assets);
        metric("total_liabilities", r.total_liabilities);
        metric("total_equity", r.total_equity);
        metric("capital_stock", r.capital_stock);
        if (!passes_schema(catalog, "FinancialStatements", props, where,
                           report.rejected))
            continue;
        NodeId fs = g.create_node({"FinancialStatements"}, std::move(props));
        g.create_edge(*company, "HAS_FINANCIAL_STATEMENTS", fs);
        g.create_edge(fs, "FOR_YEAR", year_node(g, r.year));
        if (r.quarter)
            g.create_edge(fs, "FOR_QUARTER", quarter_node(g, r.year, *r.quarter));
        ++report.loaded;
    }

    return report;
}

IngestReport ingest_directory(PropertyGraph& g, const SchemaCatalog& catalog,
                              const std::string& dir) {
    namespace fs = std::filesystem;
    declare_market_indexes(g);

    auto path_of = [&](const char* name) { return (fs::path(dir) / name).string(); };
    bool any = false;
    IngestReport report;

    std::vector<CompanyRecord> companies;
    std::vector<DailyPriceRecord> prices;
    std::vector<IndicatorRecord> indicators;
    std::vector<FinStatementRecord> statements;

    auto load = [&](const char* name, auto parser, auto& records) {
        std::string path = path_of(name);
        if (!fs::exists(path)) return;
        any = true;
        try {
            auto parsed = parser(read_text_file(path), name);
            records = std::move(parsed.records);
            for (auto& issue : parsed.issues)
                report.rejected.push_back(std::move(issue));
        } catch (const MalformedRecord& e) {
            // the header itself is unusable; skip the file, keep the pipeline
            report.rejected.push_back({name, e.line, e.reason});
        }
    };
    load("companies.csv", parse_company_csv, companies);
    load("prices.csv", parse_price_csv, prices);
    load("indicators.csv", parse_indicator_csv, indicators);
    load("statements.jsonl", parse_statement_jsonl, statements);

    if (!any)
        throw IoFailure("no ingest files found in " + dir +
                        " (expected companies.csv, prices.csv, indicators.csv, "
                        "or statements.jsonl)");

    report.merge(ingest_companies(g, catalog, companies));
    report.merge(ingest_timeseries(g, catalog, prices, indicators, statements));
    return report;
}

}  // namespace marketgraph

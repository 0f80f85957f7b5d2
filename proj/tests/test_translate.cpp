#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "marketgraph/errors.hpp"
#include "marketgraph/executor.hpp"
#include "marketgraph/fixture.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/ingest.hpp"
#include "marketgraph/parser.hpp"
#include "marketgraph/question.hpp"
#include "marketgraph/records.hpp"
#include "marketgraph/render.hpp"
#include "marketgraph/schema.hpp"
#include "marketgraph/table.hpp"
#include "marketgraph/translate.hpp"
#include "support/listings.hpp"

using namespace marketgraph;

namespace {

const PropertyGraph& demo_graph() {
    static const PropertyGraph g = [] {
        PropertyGraph graph;
        const SchemaCatalog& cat = SchemaCatalog::market();
        FixtureFiles files = generate_fixture(demo_spec(), 42);
        auto companies = parse_company_csv(files.companies_csv, "companies.csv");
        auto prices = parse_price_csv(files.prices_csv, "prices.csv");
        auto indicators = parse_indicator_csv(files.indicators_csv, "indicators.csv");
        auto statements = parse_statement_jsonl(files.statements_jsonl, "statements.jsonl");
        declare_market_indexes(graph);
        ingest_companies(graph, cat, companies.records);
        ingest_timeseries(graph, cat, prices.records, indicators.records,
                          statements.records);
        return graph;
    }();
    return g;
}

const Lexicon& demo_lexicon() {
    static const Lexicon lex = build_lexicon(demo_graph());
    return lex;
}

// Row-level comparison for queries that agree on values but not on column
// names (the reference listing abbreviates its aliases).
bool rows_match_ignoring_column_names(const ResultTable& got,
                                      const ResultTable& want) {
    if (got.columns.size() != want.columns.size()) return false;
    ResultTable renamed = got;
    renamed.columns = want.columns;
    return table_multiset_equal(renamed, want);
}

const CompetitorFinancialComparison& as_comparison(const QuestionIntent& i) {
    REQUIRE(std::holds_alternative<CompetitorFinancialComparison>(i));
    return std::get<CompetitorFinancialComparison>(i);
}

const SectorIndicatorScreen& as_screen(const QuestionIntent& i) {
    REQUIRE(std::holds_alternative<SectorIndicatorScreen>(i));
    return std::get<SectorIndicatorScreen>(i);
}

const PriceLookup& as_price(const QuestionIntent& i) {
    REQUIRE(std::holds_alternative<PriceLookup>(i));
    return std::get<PriceLookup>(i);
}

const Unsupported& as_unsupported(const QuestionIntent& i) {
    REQUIRE(std::holds_alternative<Unsupported>(i));
    return std::get<Unsupported>(i);
}

std::string code_of(const CompanyRef& ref) {
    REQUIRE(ref.code.has_value());
    return *ref.code;
}

}  // namespace

TEST_CASE("lexicon harvests every company surface and the sector names") {
    const Lexicon& lex = demo_lexicon();

    CHECK(lex.companies.size() == 12);
    REQUIRE(lex.companies.count("005930") == 1);
    CHECK(lex.companies.at("005930").abbrv == "Samsung Electronics");
    CHECK(lex.companies.at("000660").abbrv == "SK Hynix");

    // all four name properties map back to the code, lowercased
    CHECK(lex.company_surfaces.at("005930") == "005930");
    CHECK(lex.company_surfaces.at("samsung electronics") == "005930");
    CHECK(lex.company_surfaces.at("삼성전자") == "005930");
    CHECK(lex.company_surfaces.at("sk hynix") == "000660");
    CHECK(lex.company_surfaces.at("sk하이닉스") == "000660");

    CHECK(lex.sector_surfaces.size() == 1);
    CHECK(lex.sector_surfaces.at("semiconductor") == "Semiconductor");
}

TEST_CASE("classification: the comparison case study question") {
    QuestionIntent intent =
        classify_and_extract(mgtest::kComparisonQuestion, demo_lexicon());
    CHECK(std::string(intent_name(intent)) == "competitor_financial_comparison");

    const auto& cmp = as_comparison(intent);
    CHECK(code_of(cmp.anchor) == "005930");
    REQUIRE(cmp.competitors.size() == 1);
    CHECK(code_of(cmp.competitors[0]) == "000660");
    CHECK(cmp.years == std::vector<std::int64_t>{2023, 2024, 2025});
    CHECK(cmp.metrics == std::vector<Metric>{Metric::Revenue,
                                             Metric::OperatingIncome,
                                             Metric::NetIncome});
}

TEST_CASE("classification: the screen case study question") {
    QuestionIntent intent =
        classify_and_extract(mgtest::kScreenQuestion, demo_lexicon());
    CHECK(std::string(intent_name(intent)) == "sector_indicator_screen");

    const auto& screen = as_screen(intent);
    REQUIRE(std::holds_alternative<CompanyRef>(screen.anchor));
    CHECK(code_of(std::get<CompanyRef>(screen.anchor)) == "000660");
    CHECK(screen.years == std::vector<std::int64_t>{2023, 2024, 2025});
    CHECK(screen.predicate == default_screen_predicate());
    CHECK(default_screen_predicate() ==
          "(ind.per < 10 OR ind.pbr < 1 OR ind.eps > 0)");
}

TEST_CASE("classification: sector name anchors the screen when no company is named") {
    QuestionIntent intent = classify_and_extract(
        "List undervalued stocks in the Semiconductor sector by PER and PBR "
        "for 2024.",
        demo_lexicon());
    const auto& screen = as_screen(intent);
    REQUIRE(std::holds_alternative<SectorRef>(screen.anchor));
    CHECK(std::get<SectorRef>(screen.anchor).name == "Semiconductor");
    CHECK(screen.years == std::vector<std::int64_t>{2024});
}

TEST_CASE("classification: price lookup in both date spellings") {
    const Lexicon& lex = demo_lexicon();

    QuestionIntent compact = classify_and_extract(
        "What was the stock price of Samsung Electronics on 20230306?", lex);
    CHECK(std::string(intent_name(compact)) == "price_lookup");
    CHECK(code_of(as_price(compact).company) == "005930");
    CHECK(as_price(compact).date == "20230306");

    QuestionIntent iso = classify_and_extract(
        "How was SK Hynix trading on 2023-03-07?", lex);
    CHECK(code_of(as_price(iso).company) == "000660");
    CHECK(as_price(iso).date == "20230307");
}

TEST_CASE("classification: explicit stock code span overrides the name mention") {
    const Lexicon& lex = demo_lexicon();

    // the annotation wins even when it contradicts the lexicon
    QuestionIntent intent = classify_and_extract(
        "Compare the revenue of Samsung Electronics (stock code: 000990) and "
        "SK Hynix for 2023 and 2024.",
        lex);
    const auto& cmp = as_comparison(intent);
    CHECK(code_of(cmp.anchor) == "000990");
    REQUIRE(cmp.competitors.size() == 1);
    CHECK(code_of(cmp.competitors[0]) == "000660");
    CHECK(cmp.years == std::vector<std::int64_t>{2023, 2024});
    CHECK(cmp.metrics == std::vector<Metric>{Metric::Revenue});

    // an annotation with no preceding name mention stands alone
    QuestionIntent alone = classify_and_extract(
        "Compare the net income of (stock code: 020760) versus SK Hynix for "
        "2025.",
        lex);
    const auto& cmp2 = as_comparison(alone);
    CHECK(code_of(cmp2.anchor) == "020760");
    CHECK(code_of(cmp2.competitors[0]) == "000660");
}

TEST_CASE("classification: unsupported paths carry specific reasons") {
    const Lexicon& lex = demo_lexicon();

    CHECK(as_unsupported(classify_and_extract(
              "Predict tomorrow's closing price for Samsung Electronics.",
              lex))
              .reason == "prediction is not supported");

    CHECK(as_unsupported(classify_and_extract(
              "Compare the revenue of Frobozz Magic Co and Zork Industries "
              "for 2023.",
              lex))
              .reason == "the question names no known company");

    CHECK(as_unsupported(classify_and_extract(
              "Compare the revenue of Samsung Electronics and SK Hynix.",
              lex))
              .reason == "the question gives no years");

    CHECK(as_unsupported(classify_and_extract(
              "Undervalued stocks by PER in the Shipbuilding universe.", lex))
              .reason == "the question names no known company or sector");

    CHECK(as_unsupported(classify_and_extract("Hello there.", lex)).reason ==
          "the question matches no supported pattern");
}

TEST_CASE("classification: years are sorted, deduplicated, and bounded") {
    const Lexicon& lex = demo_lexicon();
    QuestionIntent intent = classify_and_extract(
        "Compare the revenue of Samsung Electronics and SK Hynix for 2025, "
        "2023, 2024 and 2023 again.",
        lex);
    CHECK(as_comparison(intent).years ==
          std::vector<std::int64_t>{2023, 2024, 2025});

    // 1899 and 3000 fall outside the year window
    QuestionIntent none = classify_and_extract(
        "Compare the revenue of Samsung Electronics and SK Hynix for 1899 "
        "and 3000.",
        lex);
    CHECK(as_unsupported(none).reason == "the question gives no years");
}

TEST_CASE("translate: comparison template is the expected text and matches the reference") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    QuestionIntent intent =
        classify_and_extract(mgtest::kComparisonQuestion, demo_lexicon());
    TranslationResult tr = translate(intent, g, cat);

    const std::string expected =
        "MATCH (c1:Company {stock_code: \"005930\"})"
        "-[:HAS_FINANCIAL_STATEMENTS]->(fs1:FinancialStatements)"
        "-[:FOR_YEAR]->(y:Year)\n"
        "MATCH (c2:Company {stock_code: \"000660\"})"
        "-[:HAS_FINANCIAL_STATEMENTS]->(fs2:FinancialStatements)"
        "-[:FOR_YEAR]->(y)\n"
        "WHERE y.year IN [2023, 2024, 2025]\n"
        "RETURN y.year AS year, "
        "c1.stock_abbrv AS samsung_electronics_stock_abbrv, "
        "fs1.revenue AS samsung_electronics_revenue, "
        "fs1.operating_income AS samsung_electronics_operating_income, "
        "fs1.net_income AS samsung_electronics_net_income, "
        "c2.stock_abbrv AS sk_hynix_stock_abbrv, "
        "fs2.revenue AS sk_hynix_revenue, "
        "fs2.operating_income AS sk_hynix_operating_income, "
        "fs2.net_income AS sk_hynix_net_income\n"
        "ORDER BY y.year ASC";
    CHECK(tr.query_text == expected);

    // the emitted text parses back to the carried ast
    CHECK(render(parse(tr.query_text)) == render(tr.ast));
    CHECK(bind_errors(tr.ast, cat).empty());

    ResultTable got = execute(g, tr.ast);
    ResultTable want = execute(g, parse(mgtest::kComparisonQuery));
    REQUIRE(got.columns.size() == 9);
    CHECK(got.rows.size() == 3);
    CHECK(rows_match_ignoring_column_names(got, want));

    // identical row order too: both sort by year ascending
    ResultTable renamed = got;
    renamed.columns = want.columns;
    CHECK(table_equal(renamed, want));
}

TEST_CASE("translate: traversal variant when the question names no competitor") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    CompetitorFinancialComparison intent;
    intent.anchor.code = "005930";
    intent.years = {2023, 2024, 2025};
    intent.metrics = {Metric::Revenue, Metric::OperatingIncome,
                      Metric::NetIncome};

    TranslationResult tr = translate(intent, g, cat);
    CHECK(tr.query_text.find("-[:COMPETES_WITH]->(c2:Company)") !=
          std::string::npos);
    CHECK(std::find(tr.notes.begin(), tr.notes.end(),
                    "competitors resolved via COMPETES_WITH traversal") !=
          tr.notes.end());

    // Samsung has exactly one competitor in the demo data, so the traversal
    // variant returns the same row values as the explicit pairing plus the
    // competitor identity columns.
    ResultTable got = execute(g, tr.ast);
    REQUIRE(got.rows.size() == 3);
    std::size_t code_col = got.column_index("competitor_stock_code");
    REQUIRE(code_col != ResultTable::npos);
    for (const auto& row : got.rows) {
        CHECK(std::get<Value>(row[code_col]).as_text() == "000660");
    }
}

TEST_CASE("translate: a metrics subset projects only those columns") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    CompetitorFinancialComparison intent;
    intent.anchor.code = "005930";
    intent.competitors.push_back({std::string("000660"), {}, {}});
    intent.years = {2024};
    intent.metrics = {Metric::NetIncome};

    TranslationResult tr = translate(intent, g, cat);
    ResultTable got = execute(g, tr.ast);
    CHECK(got.columns == std::vector<std::string>{
                             "year", "samsung_electronics_stock_abbrv",
                             "samsung_electronics_net_income",
                             "sk_hynix_stock_abbrv", "sk_hynix_net_income"});
    REQUIRE(got.rows.size() == 1);
    CHECK(std::get<Value>(got.rows[0][2]).as_floating() ==
          doctest::Approx(34451.20));
    CHECK(std::get<Value>(got.rows[0][4]).as_floating() ==
          doctest::Approx(19797.00));
}

TEST_CASE("translate: empty metrics default to all three with a note") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    CompetitorFinancialComparison intent;
    intent.anchor.code = "005930";
    intent.competitors.push_back({std::string("000660"), {}, {}});
    intent.years = {2023};

    TranslationResult tr = translate(intent, g, cat);
    CHECK(std::find(tr.notes.begin(), tr.notes.end(),
                    "metrics defaulted to revenue, operating_income, "
                    "net_income") != tr.notes.end());
    CHECK(execute(g, tr.ast).columns.size() == 9);
}

TEST_CASE("translate: screen template matches the reference execution exactly") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    QuestionIntent intent =
        classify_and_extract(mgtest::kScreenQuestion, demo_lexicon());
    TranslationResult tr = translate(intent, g, cat);

    const std::string expected =
        "MATCH (a:Company {stock_code: \"000660\"})-[:BELONGS_TO]->(s:Sector)"
        "<-[:BELONGS_TO]-(c:Company)\n"
        "WHERE c.stock_code <> a.stock_code\n"
        "WITH c\n"
        "MATCH (c)-[:HAS_INDICATOR]->(ind:Indicator)-[:MEASURED_ON]->(d:Date)\n"
        "WHERE d.year IN [2023, 2024, 2025]\n"
        "WITH c, ind, d\n"
        "WHERE (ind.per < 10 OR ind.pbr < 1 OR ind.eps > 0)\n"
        "RETURN c.stock_code AS stock_code, c.stock_abbrv AS stock_abbrv, "
        "d.year AS year, ind.per AS per, ind.pbr AS pbr, ind.eps AS eps\n"
        "ORDER BY d.year ASC, ind.per ASC, ind.pbr ASC, ind.eps DESC";
    CHECK(tr.query_text == expected);
    CHECK(std::find(tr.notes.begin(), tr.notes.end(),
                    "default screen thresholds applied: per < 10, pbr < 1, "
                    "eps > 0") != tr.notes.end());

    ResultTable got = execute(g, tr.ast);
    ResultTable want = execute(g, parse(mgtest::kScreenQuery));
    CHECK(table_equal(got, want));

    // 11 sector peers, three indicator years each, every row passes the
    // default predicate in the demo data
    CHECK(got.rows.size() == 33);
    CHECK(std::get<Value>(got.rows[0][0]).as_text() == "038060");
    CHECK(std::get<Value>(got.rows[0][2]).as_integer() == 2023);
}

TEST_CASE("translate: sector-anchored screen covers the whole sector") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    SectorIndicatorScreen intent;
    intent.anchor = SectorRef{"semiconductor", {}};  // case-insensitive
    intent.years = {2023, 2024, 2025};

    TranslationResult tr = translate(intent, g, cat);
    CHECK(tr.query_text.find(
              "MATCH (s:Sector {stock_sector_nm: \"Semiconductor\"})"
              "<-[:BELONGS_TO]-(c:Company)") == 0);

    // no anchor exclusion: all 12 companies appear
    ResultTable got = execute(g, tr.ast);
    CHECK(got.rows.size() == 36);
}

TEST_CASE("translate: price lookup template and execution") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    QuestionIntent intent = classify_and_extract(
        "What was the stock price of Samsung Electronics on 20230306?",
        demo_lexicon());
    TranslationResult tr = translate(intent, g, cat);

    const std::string expected =
        "MATCH (c:Company {stock_code: \"005930\"})-[:HAS_STOCK_PRICE]->"
        "(sp:StockPrice)-[:RECORDED_ON]->(d:Date {date: \"20230306\"})\n"
        "OPTIONAL MATCH (d)-[:IN_YEAR]->(y:Year)\n"
        "OPTIONAL MATCH (d)-[:IN_QUARTER]->(q:Quarter)\n"
        "RETURN c.stock_abbrv AS stock_abbrv, d.date AS date, "
        "sp.stck_oprc AS open, sp.stck_clpr AS close, sp.stck_hgpr AS high, "
        "sp.stck_lwpr AS low, y.year AS year, q.quarter AS quarter";
    CHECK(tr.query_text == expected);

    ResultTable got = execute(g, tr.ast);
    REQUIRE(got.rows.size() == 1);
    REQUIRE(got.columns.size() == 8);
    CHECK(std::get<Value>(got.rows[0][0]).as_text() == "Samsung Electronics");
    CHECK(std::get<Value>(got.rows[0][1]).as_text() == "20230306");
    CHECK(std::get<Value>(got.rows[0][6]).as_integer() == 2023);
    CHECK(std::get<Value>(got.rows[0][7]).as_integer() == 1);

    // the price cells agree with the raw fixture records
    FixtureFiles files = generate_fixture(demo_spec(), 42);
    auto prices = parse_price_csv(files.prices_csv, "prices.csv");
    const DailyPriceRecord* rec = nullptr;
    for (const auto& r : prices.records) {
        if (r.stock_code == "005930" && r.date == "20230306") rec = &r;
    }
    REQUIRE(rec != nullptr);
    CHECK(std::get<Value>(got.rows[0][2]).as_floating() ==
          doctest::Approx(rec->open));
    CHECK(std::get<Value>(got.rows[0][3]).as_floating() ==
          doctest::Approx(rec->close));
    CHECK(std::get<Value>(got.rows[0][4]).as_floating() ==
          doctest::Approx(rec->high));
    CHECK(std::get<Value>(got.rows[0][5]).as_floating() ==
          doctest::Approx(rec->low));
}

TEST_CASE("translate: price lookup rejects an impossible date") {
    PriceLookup intent;
    intent.company.code = "005930";
    intent.date = "20230230";
    CHECK_THROWS_AS(translate(intent, demo_graph(), SchemaCatalog::market()),
                    BadDate);
}

TEST_CASE("translate: unresolvable references raise EntityNotFound") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    CompetitorFinancialComparison by_code;
    by_code.anchor.code = "999999";
    by_code.years = {2023};
    CHECK_THROWS_WITH_AS(translate(by_code, g, cat),
                         doctest::Contains("999999"), EntityNotFound);

    CompetitorFinancialComparison by_name;
    by_name.anchor.name = "Nonexistent Corp";
    by_name.years = {2023};
    CHECK_THROWS_WITH_AS(translate(by_name, g, cat),
                         doctest::Contains("Nonexistent Corp"),
                         EntityNotFound);

    SectorIndicatorScreen screen;
    screen.anchor = SectorRef{"Shipbuilding", {}};
    screen.years = {2023};
    CHECK_THROWS_WITH_AS(translate(screen, g, cat),
                         doctest::Contains("Shipbuilding"), EntityNotFound);
}

TEST_CASE("translate: case-insensitive name resolution over all name properties") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();

    PriceLookup intent;
    intent.company.name = "sk hynix";  // stock_abbrv, wrong case
    intent.date = "20230307";
    TranslationResult tr = translate(intent, g, cat);
    CHECK(tr.query_text.find("\"000660\"") != std::string::npos);
}

TEST_CASE("translate: unsupported intent is a TemplateGap") {
    Unsupported intent{"prediction is not supported"};
    CHECK_THROWS_WITH_AS(
        translate(intent, demo_graph(), SchemaCatalog::market()),
        doctest::Contains("prediction is not supported"), TemplateGap);
}

TEST_CASE("translate: byte-identical across repeated calls and graph rebuilds") {
    const SchemaCatalog& cat = SchemaCatalog::market();
    QuestionIntent intent =
        classify_and_extract(mgtest::kComparisonQuestion, demo_lexicon());

    TranslationResult first = translate(intent, demo_graph(), cat);
    TranslationResult second = translate(intent, demo_graph(), cat);
    CHECK(first.query_text == second.query_text);
    CHECK(first.notes == second.notes);

    PropertyGraph rebuilt;
    FixtureFiles files = generate_fixture(demo_spec(), 42);
    declare_market_indexes(rebuilt);
    ingest_companies(rebuilt, cat,
                     parse_company_csv(files.companies_csv, "companies.csv")
                         .records);
    ingest_timeseries(
        rebuilt, cat,
        parse_price_csv(files.prices_csv, "prices.csv").records,
        parse_indicator_csv(files.indicators_csv, "indicators.csv").records,
        parse_statement_jsonl(files.statements_jsonl, "statements.jsonl")
            .records);
    CHECK(translate(intent, rebuilt, cat).query_text == first.query_text);
}

TEST_CASE("bind_errors: unknown labels, relationship types, and properties") {
    const SchemaCatalog& cat = SchemaCatalog::market();

    CHECK(bind_errors(parse(mgtest::kComparisonQuery), cat).empty());
    CHECK(bind_errors(parse(mgtest::kScreenQuery), cat).empty());
    CHECK(bind_errors(parse(mgtest::kIntroQuery), cat).empty());

    auto errs = bind_errors(
        parse("MATCH (n:Bogus)-[:EATS]->(m:Company {nope: 1}) "
              "RETURN n.thing"),
        cat);
    CHECK(errs == std::vector<std::string>{
                      "unknown label Bogus", "unknown property nope",
                      "unknown relationship type EATS",
                      "unknown property thing"});

    // duplicates collapse
    auto dup = bind_errors(
        parse("MATCH (n:Bogus)-[:X]->(m:Bogus) RETURN n"), cat);
    CHECK(dup == std::vector<std::string>{"unknown label Bogus",
                                          "unknown relationship type X"});

    // properties reachable through WITH and ORDER BY are checked too
    auto deep = bind_errors(
        parse("MATCH (n:Company) WITH n WHERE n.mystery > 1 "
              "RETURN n.stock_code AS code ORDER BY n.enigma"),
        cat);
    CHECK(deep == std::vector<std::string>{"unknown property mystery",
                                           "unknown property enigma"});
}

TEST_CASE("validate_generated: accepts the reference query verbatim") {
    const SchemaCatalog& cat = SchemaCatalog::market();
    QuestionIntent intent =
        classify_and_extract(mgtest::kComparisonQuestion, demo_lexicon());

    TranslationResult tr =
        validate_generated(intent, mgtest::kComparisonQuery, cat);
    CHECK(tr.query_text == mgtest::kComparisonQuery);
    CHECK(render(tr.ast) == render(parse(mgtest::kComparisonQuery)));
    CHECK(tr.notes == std::vector<std::string>{
                          "query produced by external backend"});

    ResultTable via_backend = execute(demo_graph(), tr.ast);
    ResultTable direct = execute(demo_graph(), parse(mgtest::kComparisonQuery));
    CHECK(table_equal(via_backend, direct));
}

TEST_CASE("validate_generated: rejects text that does not parse") {
    QuestionIntent intent = Unsupported{"n/a"};
    CHECK_THROWS_WITH_AS(
        validate_generated(intent, "DROP ALL", SchemaCatalog::market()),
        doctest::Contains("generated query does not parse"),
        GeneratedQueryInvalid);
    CHECK_THROWS_AS(
        validate_generated(intent, "", SchemaCatalog::market()),
        GeneratedQueryInvalid);
}

TEST_CASE("validate_generated: rejects well-formed text naming unknown schema") {
    QuestionIntent intent = Unsupported{"n/a"};
    CHECK_THROWS_WITH_AS(
        validate_generated(intent, "MATCH (n:Employee) RETURN n.salary",
                           SchemaCatalog::market()),
        doctest::Contains("unknown label Employee"), GeneratedQueryInvalid);
    CHECK_THROWS_WITH_AS(
        validate_generated(intent,
                           "MATCH (c:Company)-[:OWNS]->(d:Date) RETURN c",
                           SchemaCatalog::market()),
        doctest::Contains("unknown relationship type OWNS"),
        GeneratedQueryInvalid);
}

TEST_CASE("translation rules text documents the three templates") {
    const std::string& rules = translation_rules_text();
    CHECK(rules.find("Financial comparison:") != std::string::npos);
    CHECK(rules.find("Sector screen:") != std::string::npos);
    CHECK(rules.find("Price lookup:") != std::string::npos);
    CHECK(rules.find("ORDER BY") != std::string::npos);
}

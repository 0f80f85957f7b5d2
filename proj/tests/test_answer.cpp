#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "marketgraph/answer.hpp"
#include "marketgraph/errors.hpp"
#include "marketgraph/executor.hpp"
#include "marketgraph/fixture.hpp"
#include "marketgraph/graph.hpp"
#include "marketgraph/ingest.hpp"
#include "marketgraph/parser.hpp"
#include "marketgraph/question.hpp"
#include "marketgraph/records.hpp"
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
        declare_market_indexes(graph);
        ingest_companies(
            graph, cat,
            parse_company_csv(files.companies_csv, "companies.csv").records);
        ingest_timeseries(
            graph, cat,
            parse_price_csv(files.prices_csv, "prices.csv").records,
            parse_indicator_csv(files.indicators_csv, "indicators.csv").records,
            parse_statement_jsonl(files.statements_jsonl, "statements.jsonl")
                .records);
        return graph;
    }();
    return g;
}

ResultTable make_table(std::vector<std::string> columns,
                       std::vector<std::vector<Value>> rows) {
    ResultTable t;
    t.columns = std::move(columns);
    for (auto& row : rows) {
        std::vector<Cell> cells;
        for (Value& v : row) cells.push_back(std::move(v));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Value F(double v) { return Value::floating(v); }
Value I(std::int64_t v) { return Value::integer(v); }
Value T(const char* v) { return Value::text(v); }
Value N() { return Value::null(); }

// two-company comparison table in the translated shape
ResultTable comparison_table(
    std::vector<std::vector<Value>> rows,
    std::vector<std::string> metrics = {"revenue", "net_income"}) {
    std::vector<std::string> cols{"year", "a_stock_abbrv"};
    for (const auto& m : metrics) cols.push_back("a_" + m);
    cols.push_back("b_stock_abbrv");
    for (const auto& m : metrics) cols.push_back("b_" + m);
    return make_table(std::move(cols), std::move(rows));
}

const ReportSection& section_named(const AnswerReport& r,
                                   const std::string& heading) {
    for (const ReportSection& s : r.sections)
        if (s.heading == heading) return s;
    REQUIRE_MESSAGE(false, ("no section named " + heading).c_str());
    static ReportSection unreachable;
    return unreachable;
}

bool has_sentence(const ReportSection& s, const std::string& sentence) {
    return std::find(s.narrative.begin(), s.narrative.end(), sentence) !=
           s.narrative.end();
}

AnswerReport demo_report(const char* question) {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();
    QuestionIntent intent = classify_and_extract(question, build_lexicon(g));
    TranslationResult tr = translate(intent, g, cat);
    ResultTable table = execute(g, tr.ast);
    return compose(question, tr, table);
}

// Independent re-implementation of the bucket rules, straight loops over the
// raw screen table; the composer must agree with it on every company.
std::map<std::string, Bucket> oracle_buckets(const ResultTable& t) {
    std::size_t code_c = t.column_index("stock_code");
    std::size_t year_c = t.column_index("year");
    std::size_t per_c = t.column_index("per");
    std::size_t pbr_c = t.column_index("pbr");
    std::size_t eps_c = t.column_index("eps");

    auto num = [](const Cell& c) -> std::optional<double> {
        const Value* v = std::get_if<Value>(&c);
        if (!v) return std::nullopt;
        if (v->kind() == Value::Kind::Float) return v->as_floating();
        if (v->kind() == Value::Kind::Integer)
            return static_cast<double>(v->as_integer());
        return std::nullopt;
    };

    // per-(year, metric) sector means and stds
    std::map<std::int64_t, std::vector<double>> per_by_year, pbr_by_year;
    for (const auto& row : t.rows) {
        const Value* y = std::get_if<Value>(&row[year_c]);
        if (!y || y->kind() != Value::Kind::Integer) continue;
        if (auto v = num(row[per_c])) per_by_year[y->as_integer()].push_back(*v);
        if (auto v = num(row[pbr_c])) pbr_by_year[y->as_integer()].push_back(*v);
    }
    auto avg_stats = [](const std::map<std::int64_t, std::vector<double>>& g)
        -> std::pair<double, double> {
        double mean_sum = 0, std_sum = 0;
        for (const auto& [year, xs] : g) {
            double mu = 0;
            for (double x : xs) mu += x;
            mu /= xs.size();
            double var = 0;
            for (double x : xs) var += (x - mu) * (x - mu);
            mean_sum += mu;
            std_sum += std::sqrt(var / xs.size());
        }
        return {mean_sum / g.size(), std_sum / g.size()};
    };
    auto [per_mean, per_std] = avg_stats(per_by_year);
    auto [pbr_mean, pbr_std] = avg_stats(pbr_by_year);

    struct Agg {
        std::vector<double> per, pbr;
        std::map<std::int64_t, double> eps;
        bool eps_positive = true;
    };
    std::map<std::string, Agg> agg;
    for (const auto& row : t.rows) {
        const Value* code = std::get_if<Value>(&row[code_c]);
        const Value* y = std::get_if<Value>(&row[year_c]);
        if (!code || code->kind() != Value::Kind::Text) continue;
        if (!y || y->kind() != Value::Kind::Integer) continue;
        Agg& a = agg[code->as_text()];
        if (auto v = num(row[per_c])) a.per.push_back(*v);
        if (auto v = num(row[pbr_c])) a.pbr.push_back(*v);
        if (auto v = num(row[eps_c])) {
            a.eps[y->as_integer()] = *v;
            if (*v <= 0) a.eps_positive = false;
        }
    }

    std::map<std::string, Bucket> out;
    for (const auto& [code, a] : agg) {
        auto mean = [](const std::vector<double>& xs) {
            double s = 0;
            for (double x : xs) s += x;
            return s / xs.size();
        };
        bool undervalued = !a.per.empty() && mean(a.per) < per_mean &&
                           !a.pbr.empty() && mean(a.pbr) < pbr_mean &&
                           a.eps_positive;
        bool rising = a.eps.size() >= 2;
        std::optional<double> prev;
        for (const auto& [year, v] : a.eps) {
            if (prev && v <= *prev) rising = false;
            prev = v;
        }
        bool growth = !undervalued && rising && !a.per.empty() &&
                      mean(a.per) <= per_mean + per_std;
        out[code] = undervalued ? Bucket::Undervalued
                    : growth    ? Bucket::Growth
                                : Bucket::Neither;
    }
    return out;
}

}  // namespace

TEST_CASE("format_number groups thousands and keeps two decimals") {
    CHECK(format_number(258935.0) == "258,935.00");
    CHECK(format_number(300870.5) == "300,870.50");
    CHECK(format_number(-9137.5) == "-9,137.50");
    CHECK(format_number(0.5) == "0.50");
    CHECK(format_number(1234567.891) == "1,234,567.89");
    CHECK(format_number(999.999) == "1,000.00");
    CHECK(format_number(-0.001) == "0.00");
    CHECK(format_number(5.1) == "5.10");
    CHECK(format_number(-1234567.0) == "-1,234,567.00");
}

TEST_CASE("format_value keeps integers plain and floats grouped") {
    CHECK(format_value(Value::null()) == "null");
    CHECK(format_value(Value::integer(5969782550)) == "5969782550");
    CHECK(format_value(Value::integer(2023)) == "2023");
    CHECK(format_value(Value::floating(2100.0)) == "2,100.00");
    CHECK(format_value(Value::text("20230306")) == "20230306");
    CHECK(format_value(Value::boolean(true)) == "true");
    CHECK(format_value(Value::text_list({"a", "b"})) == "[a, b]");
}

TEST_CASE("sector_stats computes per-(year, metric) mean and population std") {
    ResultTable t = make_table(
        {"year", "per", "pbr", "eps"},
        {{I(2023), F(5), F(1), F(10)}, {I(2023), F(15), F(3), N()}});
    BaselineMap stats = sector_stats(t);

    REQUIRE(stats.count({2023, "per"}) == 1);
    CHECK(stats[{2023, "per"}].mean == doctest::Approx(10.0));
    CHECK(stats[{2023, "per"}].stddev == doctest::Approx(5.0));
    CHECK(stats[{2023, "pbr"}].mean == doctest::Approx(2.0));
    CHECK(stats[{2023, "pbr"}].stddev == doctest::Approx(1.0));
    // single usable eps cell: mean is the value, population std is zero
    CHECK(stats[{2023, "eps"}].mean == doctest::Approx(10.0));
    CHECK(stats[{2023, "eps"}].stddev == doctest::Approx(0.0));
}

TEST_CASE("sector_stats omits groups with no usable cells and skips null years") {
    ResultTable t = make_table({"year", "per", "pbr", "eps"},
                               {{I(2023), N(), F(1), F(10)},
                                {I(2024), F(8), N(), N()},
                                {N(), F(99), F(99), F(99)}});
    BaselineMap stats = sector_stats(t);
    CHECK(stats.count({2023, "per"}) == 0);
    CHECK(stats.count({2024, "pbr"}) == 0);
    CHECK(stats.count({2024, "eps"}) == 0);
    CHECK(stats[{2024, "per"}].mean == doctest::Approx(8.0));
    // the null-year row contributed nowhere
    for (const auto& [key, b] : stats) CHECK(b.mean != doctest::Approx(99.0));
}

TEST_CASE("sector_stats requires the four screen columns") {
    ResultTable t = make_table({"year", "pbr"}, {});
    CHECK_THROWS_WITH_AS(sector_stats(t),
                         "screen table is missing columns: per eps",
                         MissingColumns);
}

TEST_CASE("yoy_trends applies the year-over-year formula") {
    ResultTable t = comparison_table(
        {{I(2023), T("A"), F(100), F(-100), T("B"), F(50), F(0)},
         {I(2024), T("A"), F(150), F(-50), T("B"), F(50), F(10)},
         {I(2026), T("A"), F(300), F(7), T("B"), N(), F(20)}});
    std::vector<TrendStat> trends = yoy_trends(t);

    auto find = [&](const char* company, const char* metric,
                    std::int64_t year) -> const TrendStat& {
        for (const TrendStat& s : trends)
            if (s.company == company && s.metric == metric && s.year == year)
                return s;
        REQUIRE(false);
        return trends.front();
    };

    CHECK_FALSE(find("A", "revenue", 2023).yoy_pct.has_value());  // first year
    CHECK(find("A", "revenue", 2024).yoy_pct == doctest::Approx(50.0));
    // negative prior uses |v_prev|: (-50 - -100) / 100 = +50%
    CHECK(find("A", "net_income", 2024).yoy_pct == doctest::Approx(50.0));
    // zero prior suppresses the stat
    CHECK_FALSE(find("B", "net_income", 2024).yoy_pct.has_value());
    // a gap year means no t-1 value, so no stat
    CHECK_FALSE(find("A", "revenue", 2026).yoy_pct.has_value());
    // flat value is a 0% move, still reported
    CHECK(find("B", "revenue", 2024).yoy_pct == doctest::Approx(0.0));
    // null cells produce no TrendStat at all
    for (const TrendStat& s : trends)
        CHECK_FALSE((s.company == "B" && s.metric == "revenue" && s.year == 2026));
}

TEST_CASE("comparison shape violations raise ShapeMismatch") {
    CHECK_THROWS_WITH_AS(
        yoy_trends(make_table({"y", "a_stock_abbrv", "a_revenue"}, {})),
        "comparison table has no year column", ShapeMismatch);
    CHECK_THROWS_WITH_AS(
        yoy_trends(make_table({"year", "a_stock_abbrv", "a_revenue"}, {})),
        "comparison table needs at least two company column groups",
        ShapeMismatch);
    CHECK_THROWS_WITH_AS(
        yoy_trends(make_table({"year", "a_stock_abbrv", "a_revenue",
                               "b_stock_abbrv", "b_net_income"},
                              {})),
        "company column groups disagree on metrics", ShapeMismatch);
    CHECK_THROWS_WITH_AS(
        yoy_trends(make_table({"year", "a_stock_abbrv", "a_revenue",
                               "b_stock_abbrv", "b_revenue", "mystery"},
                              {})),
        "unexpected column mystery in comparison table", ShapeMismatch);
    CHECK_THROWS_WITH_AS(
        yoy_trends(comparison_table(
            {{T("nope"), T("A"), F(1), F(1), T("B"), F(1), F(1)}})),
        "year column must hold integers", ShapeMismatch);
}

TEST_CASE("summarize_comparison emits leader, lead-change, and scale sentences") {
    // A leads revenue in all years; B takes net income in the final year
    ResultTable t = comparison_table(
        {{I(2023), T("A"), F(1000), F(100), T("B"), F(500), F(50)},
         {I(2024), T("A"), F(1100), F(120), T("B"), F(600), F(110)},
         {I(2025), T("A"), F(1200), F(130), T("B"), F(700), F(200)}});
    AnswerReport report = summarize_comparison(t);

    REQUIRE(report.sections.size() == 2);
    const ReportSection& revenue = section_named(report, "revenue");
    CHECK(has_sentence(revenue, "In 2023, A leads revenue at 1,000.00."));
    CHECK(has_sentence(revenue, "In 2025, A leads revenue at 1,200.00."));
    CHECK(has_sentence(
        revenue, "A maintains the larger overall revenue scale across the period."));
    for (const std::string& s : revenue.narrative)
        CHECK(s.find("overtakes") == std::string::npos);

    const ReportSection& net = section_named(report, "net income");
    CHECK(has_sentence(net, "In 2023, A leads net income at 100.00."));
    CHECK(has_sentence(net, "In 2025, B leads net income at 200.00."));
    CHECK(has_sentence(net, "B overtakes A in net income by 2025."));

    REQUIRE(revenue.table.has_value());
    CHECK(revenue.table->columns ==
          std::vector<std::string>{"company", "year", "value", "yoy_pct"});
    CHECK(revenue.table->rows.size() == 6);

    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("summarize_comparison: single-year tables have no trends or changes") {
    ResultTable t = comparison_table(
        {{I(2024), T("A"), F(10), F(1), T("B"), F(20), F(2)}});
    AnswerReport report = summarize_comparison(t);
    for (const ReportSection& s : report.sections) {
        for (const std::string& sentence : s.narrative)
            CHECK(sentence.find("overtakes") == std::string::npos);
        REQUIRE(s.table.has_value());
        std::size_t yoy = s.table->column_index("yoy_pct");
        for (const auto& row : s.table->rows)
            CHECK(std::get<Value>(row[yoy]).kind() == Value::Kind::Null);
    }
}

TEST_CASE("summarize_comparison: equal values tie") {
    ResultTable t = comparison_table(
        {{I(2023), T("A"), F(7), F(7), T("B"), F(7), F(7)}});
    AnswerReport report = summarize_comparison(t);
    const ReportSection& revenue = section_named(report, "revenue");
    CHECK(has_sentence(revenue, "In 2023, revenue is tied at 7.00."));
    CHECK(has_sentence(revenue,
                       "Overall revenue scale is tied across the period."));
    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("summarize_comparison flags nulls instead of aborting") {
    ResultTable t = comparison_table(
        {{I(2023), T("A"), F(1000), N(), T("B"), F(500), F(50)},
         {I(2024), T("A"), N(), F(120), T("B"), F(600), F(110)}});
    AnswerReport report = summarize_comparison(t);

    const ReportSection& revenue = section_named(report, "revenue");
    CHECK(has_sentence(revenue, "Data gap: A has no revenue value for 2024."));
    CHECK(has_sentence(revenue, "In 2024, B leads revenue at 600.00."));
    const ReportSection& net = section_named(report, "net income");
    CHECK(has_sentence(net, "Data gap: A has no net income value for 2023."));
    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("summarize_comparison: a fully null year is reported as unavailable") {
    ResultTable t = comparison_table(
        {{I(2023), T("A"), N(), F(1), T("B"), N(), F(2)},
         {I(2024), T("A"), F(5), F(1), T("B"), F(3), F(2)}});
    AnswerReport report = summarize_comparison(t);
    const ReportSection& revenue = section_named(report, "revenue");
    CHECK(has_sentence(revenue, "In 2023, no revenue data is available."));
    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("summarize_screen: hand-built fixtures hit each bucket rule") {
    // sector of three: L far below the means with positive eps, G cheap on
    // per but above the pbr mean with strictly rising eps, H high on both
    // with falling eps
    ResultTable t = make_table(
        {"stock_code", "stock_abbrv", "year", "per", "pbr", "eps"},
        {{T("L"), T("Low Co"), I(2023), F(2), F(0.5), F(100)},
         {T("L"), T("Low Co"), I(2024), F(2), F(0.5), F(200)},
         {T("G"), T("Grow Co"), I(2023), F(10), F(3.0), F(50)},
         {T("G"), T("Grow Co"), I(2024), F(10), F(3.0), F(80)},
         {T("H"), T("High Co"), I(2023), F(30), F(5.0), F(10)},
         {T("H"), T("High Co"), I(2024), F(30), F(5.0), F(5)}});
    AnswerReport report = summarize_screen(t);

    REQUIRE(report.classifications.size() == 3);
    std::map<std::string, Bucket> got;
    for (const auto& cls : report.classifications)
        got[cls.company_code] = cls.bucket;
    // means: per = 14, pbr ~ 2.83; G fails the pbr leg but rises within band
    CHECK(got["L"] == Bucket::Undervalued);
    CHECK(got["G"] == Bucket::Growth);
    CHECK(got["H"] == Bucket::Neither);
    CHECK(got == oracle_buckets(t));
}

TEST_CASE("summarize_screen: undervalued precedence and the two-year growth gate") {
    // U meets both rule sets: below means AND rising eps => Undervalued wins
    ResultTable both = make_table(
        {"stock_code", "stock_abbrv", "year", "per", "pbr", "eps"},
        {{T("U"), T("U Co"), I(2023), F(2), F(0.5), F(100)},
         {T("U"), T("U Co"), I(2024), F(2), F(0.5), F(200)},
         {T("X"), T("X Co"), I(2023), F(30), F(5.0), F(-10)},
         {T("X"), T("X Co"), I(2024), F(30), F(5.0), F(-20)}});
    AnswerReport r1 = summarize_screen(both);
    for (const auto& cls : r1.classifications)
        if (cls.company_code == "U") CHECK(cls.bucket == Bucket::Undervalued);

    // one year of data can never satisfy the >= 2 years growth gate
    ResultTable single = make_table(
        {"stock_code", "stock_abbrv", "year", "per", "pbr", "eps"},
        {{T("S"), T("Solo"), I(2023), F(10), F(3.0), F(100)},
         {T("X"), T("X Co"), I(2023), F(2), F(1.0), F(-5)}});
    AnswerReport r2 = summarize_screen(single);
    for (const auto& cls : r2.classifications)
        if (cls.company_code == "S") CHECK(cls.bucket == Bucket::Neither);
}

TEST_CASE("summarize_screen: null robustness never aborts") {
    ResultTable t = make_table(
        {"stock_code", "stock_abbrv", "year", "per", "pbr", "eps"},
        {{T("A"), T("A Co"), I(2023), N(), N(), N()},
         {T("A"), T("A Co"), I(2024), F(5), N(), F(10)},
         {T("B"), N(), I(2023), F(8), F(1.0), N()},
         {N(), N(), I(2024), F(1), F(0.1), F(1)},
         {T("C"), T("C Co"), N(), F(2), F(0.2), F(3)}});
    AnswerReport report = summarize_screen(t);
    CHECK(faithfulness_violations(report).empty());
    // A has no pbr data, so the undervalued pbr leg cannot pass
    for (const auto& cls : report.classifications)
        if (cls.company_code == "A") CHECK(cls.bucket != Bucket::Undervalued);
    // the null-code row and the null-year row (C's only row) were dropped,
    // so only A and B were judged
    CHECK(report.classifications.size() == 2);
}

TEST_CASE("summarize_screen requires the screen columns") {
    ResultTable t = make_table({"stock_code", "year", "per", "pbr", "eps"}, {});
    CHECK_THROWS_WITH_AS(summarize_screen(t),
                         "screen table is missing columns: stock_abbrv",
                         ShapeMismatch);
}

TEST_CASE("demo screen report reproduces the published bucket lists") {
    const PropertyGraph& g = demo_graph();
    QuestionIntent intent =
        classify_and_extract(mgtest::kScreenQuestion, build_lexicon(g));
    TranslationResult tr = translate(intent, g, SchemaCatalog::market());
    ResultTable table = execute(g, tr.ast);
    AnswerReport report = compose(mgtest::kScreenQuestion, tr, table);

    // classification order: undervalued then growth then neither, each by
    // ascending mean per
    std::vector<std::string> codes;
    std::vector<Bucket> buckets;
    for (const auto& cls : report.classifications) {
        codes.push_back(cls.company_code);
        buckets.push_back(cls.bucket);
    }
    CHECK(codes == std::vector<std::string>{
                       "038060", "080520", "153490", "108320", "036170",
                       "000990", "077360", "078350", "149010", "020760",
                       "005930"});
    CHECK(std::count(buckets.begin(), buckets.end(), Bucket::Undervalued) == 5);
    CHECK(std::count(buckets.begin(), buckets.end(), Bucket::Growth) == 5);
    CHECK(std::count(buckets.begin(), buckets.end(), Bucket::Neither) == 1);

    // the composer agrees with an independent rule evaluation
    std::map<std::string, Bucket> expected = oracle_buckets(table);
    for (const auto& cls : report.classifications)
        CHECK(cls.bucket == expected.at(cls.company_code));

    const ReportSection& undervalued = section_named(report, "undervalued");
    CHECK(has_sentence(undervalued,
                       "Undervalued, with low PER and PBR and positive EPS: "
                       "Lumens (038060), Oditek (080520), Woori E&L (153490), "
                       "LX Semicon (108320), HM Nex (036170)."));
    const ReportSection& growth = section_named(report, "growth potential");
    CHECK(has_sentence(growth,
                       "Showing growth potential, with rising EPS and "
                       "moderate PER: DB Hitek (000990), Duksan HiMetal "
                       "(077360), Hanyang Digitech (078350), IK Semicon "
                       "(149010), Iljin Display (020760)."));
    const ReportSection& rest = section_named(report, "no signal");
    CHECK(has_sentence(rest, "Outside both buckets: Samsung Electronics (005930)."));

    // every narrative number is backed; the method footer carries none
    CHECK(faithfulness_violations(report).empty());
    const ReportSection& method = section_named(report, "method");
    CHECK_FALSE(method.table.has_value());

    CHECK(report.provenance.query_text == tr.query_text);
    CHECK(report.provenance.row_count == 33);
    CHECK(std::string(intent_name(report.intent)) == "sector_indicator_screen");
}

TEST_CASE("demo comparison report reproduces the published analysis") {
    AnswerReport report = demo_report(mgtest::kComparisonQuestion);

    REQUIRE(report.sections.size() == 3);
    CHECK(report.sections[0].heading == "revenue");
    CHECK(report.sections[1].heading == "operating income");
    CHECK(report.sections[2].heading == "net income");

    const ReportSection& revenue = section_named(report, "revenue");
    CHECK(has_sentence(revenue,
                       "In 2023, Samsung Electronics leads revenue at "
                       "258,935.00."));
    CHECK(has_sentence(revenue,
                       "In 2024, Samsung Electronics leads revenue at "
                       "300,870.50."));
    CHECK(has_sentence(revenue,
                       "Samsung Electronics maintains the larger overall "
                       "revenue scale across the period."));

    const ReportSection& op = section_named(report, "operating income");
    CHECK(has_sentence(op, "In 2025, SK Hynix leads operating income at "
                           "31,050.40."));
    CHECK(has_sentence(op,
                       "SK Hynix overtakes Samsung Electronics in operating "
                       "income by 2025."));

    const ReportSection& net = section_named(report, "net income");
    CHECK(has_sentence(net,
                       "SK Hynix overtakes Samsung Electronics in net income "
                       "by 2025."));

    // SK Hynix swings from a loss to a profit: +316.66% into 2024
    REQUIRE(net.table.has_value());
    std::size_t company = net.table->column_index("company");
    std::size_t year = net.table->column_index("year");
    std::size_t yoy = net.table->column_index("yoy_pct");
    bool found = false;
    for (const auto& row : net.table->rows) {
        if (std::get<Value>(row[company]).as_text() == "SK Hynix" &&
            std::get<Value>(row[year]).as_integer() == 2024) {
            CHECK(std::get<Value>(row[yoy]).as_floating() ==
                  doctest::Approx(316.6584).epsilon(0.001));
            found = true;
        }
    }
    CHECK(found);

    CHECK(faithfulness_violations(report).empty());
    CHECK(report.provenance.row_count == 3);
    CHECK(report.provenance.question == mgtest::kComparisonQuestion);
}

TEST_CASE("compose: price lookups render a facts section") {
    AnswerReport report = demo_report(
        "What was the stock price of Samsung Electronics on 20230306?");
    REQUIRE(report.sections.size() == 1);
    const ReportSection& facts = report.sections[0];
    CHECK(facts.heading == "price facts");
    REQUIRE(facts.narrative.size() == 2);
    CHECK(facts.narrative[0].find("Samsung Electronics traded on 20230306: "
                                  "open ") == 0);
    CHECK(facts.narrative[1] == "The date falls in year 2023, quarter 1.");
    REQUIRE(facts.table.has_value());
    CHECK(facts.table->rows.size() == 1);
    CHECK(faithfulness_violations(report).empty());
    CHECK(std::string(intent_name(report.intent)) == "price_lookup");
}

TEST_CASE("compose: unsupported questions echo the reason") {
    TranslationResult tr;
    tr.intent = Unsupported{"prediction is not supported"};
    AnswerReport report = compose("Predict tomorrow.", tr, ResultTable{});
    REQUIRE(report.sections.size() == 1);
    CHECK(report.sections[0].heading == "unsupported question");
    CHECK(report.sections[0].narrative ==
          std::vector<std::string>{"prediction is not supported"});
    CHECK_FALSE(report.sections[0].table.has_value());
    CHECK(report.provenance.row_count == 0);
    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("compose: empty results state that no data matched") {
    const PropertyGraph& g = demo_graph();
    const SchemaCatalog& cat = SchemaCatalog::market();
    CompetitorFinancialComparison intent;
    intent.anchor.code = "005930";
    intent.competitors.push_back({std::string("000660"), {}, {}});
    intent.years = {1990};  // no such Year node in the demo graph
    TranslationResult tr = translate(intent, g, cat);
    ResultTable table = execute(g, tr.ast);
    REQUIRE(table.rows.empty());

    AnswerReport report = compose("nothing?", tr, table);
    REQUIRE(report.sections.size() == 1);
    CHECK(report.sections[0].heading == "result");
    CHECK(has_sentence(report.sections[0], "No matching data was found."));
    CHECK(report.provenance.row_count == 0);
    CHECK(report.provenance.query_text == tr.query_text);
    CHECK(faithfulness_violations(report).empty());
}

TEST_CASE("reports serialize deterministically to text and json") {
    AnswerReport a = demo_report(mgtest::kComparisonQuestion);
    AnswerReport b = demo_report(mgtest::kComparisonQuestion);
    CHECK(report_to_text(a) == report_to_text(b));
    CHECK(report_to_json(a) == report_to_json(b));

    AnswerReport s1 = demo_report(mgtest::kScreenQuestion);
    AnswerReport s2 = demo_report(mgtest::kScreenQuestion);
    CHECK(report_to_text(s1) == report_to_text(s2));
    CHECK(report_to_json(s1) == report_to_json(s2));

    std::string text = report_to_text(a);
    CHECK(text.find("== revenue ==") != std::string::npos);
    CHECK(text.find("== provenance ==") != std::string::npos);
    CHECK(text.find("rows: 3") != std::string::npos);
    CHECK(text.find(mgtest::kComparisonQuestion) != std::string::npos);

    auto doc = nlohmann::json::parse(report_to_json(a));
    CHECK(doc.at("intent") == "competitor_financial_comparison");
    REQUIRE(doc.at("sections").size() == 3);
    CHECK(doc["sections"][0]["heading"] == "revenue");
    CHECK(doc["sections"][0]["table"].is_object());
    CHECK(doc["provenance"]["rows"] == 3);

    auto screen_doc = nlohmann::json::parse(report_to_json(s1));
    CHECK(screen_doc.at("classifications").size() == 11);
    CHECK(screen_doc["classifications"][0]["bucket"] == "undervalued");
    CHECK(screen_doc["classifications"][0]["evidence"]["rows"].size() == 3);
}

TEST_CASE("faithfulness scan catches unbacked numbers") {
    AnswerReport report;
    ReportSection good;
    good.heading = "ok";
    good.narrative = {"Value is 5.00."};
    good.table = make_table({"v"}, {{F(5)}});
    report.sections.push_back(good);
    CHECK(faithfulness_violations(report).empty());

    ReportSection fabricated;
    fabricated.heading = "bad";
    fabricated.narrative = {"Value is 6.00."};
    fabricated.table = make_table({"v"}, {{F(5)}});
    report.sections.push_back(fabricated);
    auto v1 = faithfulness_violations(report);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == "section 'bad' mentions 6.00 which is not in its table");

    ReportSection tableless;
    tableless.heading = "worse";
    tableless.narrative = {"Magic number 42 appears."};
    report.sections.push_back(tableless);
    auto v2 = faithfulness_violations(report);
    REQUIRE(v2.size() == 2);
    CHECK(v2[1] == "section 'worse' has no table but mentions 42");

    // words containing digits are not numeric claims
    ReportSection wordy;
    wordy.heading = "words";
    wordy.narrative = {"The K200 flag and ISO8601 dates carry no claims."};
    report.sections.push_back(wordy);
    CHECK(faithfulness_violations(report).size() == 2);
}

#include "marketgraph/answer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "marketgraph/errors.hpp"

namespace marketgraph {

namespace {

const std::vector<std::string>& indicator_metrics() {
    static const std::vector<std::string> m{"per", "pbr", "eps"};
    return m;
}

std::optional<double> numeric(const Value& v) {
    if (v.kind() == Value::Kind::Integer)
        return static_cast<double>(v.as_integer());
    if (v.kind() == Value::Kind::Float) return v.as_floating();
    return std::nullopt;
}

std::optional<double> cell_numeric(const Cell& c) {
    const Value* v = std::get_if<Value>(&c);
    return v ? numeric(*v) : std::nullopt;
}

std::optional<std::string> cell_string(const Cell& c) {
    const Value* v = std::get_if<Value>(&c);
    if (v && v->kind() == Value::Kind::Text) return v->as_text();
    return std::nullopt;
}

std::optional<std::int64_t> cell_year(const Cell& c) {
    const Value* v = std::get_if<Value>(&c);
    if (v && v->kind() == Value::Kind::Integer) return v->as_integer();
    return std::nullopt;
}

Value value_or_null(const std::optional<double>& v) {
    return v ? Value::floating(*v) : Value::null();
}

std::string human_metric(const std::string& metric) {
    std::string out = metric;
    std::replace(out.begin(), out.end(), '_', ' ');
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ----- numeric token scanning (faithfulness) --------------------------------

bool alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

/// Maximal digit/comma/dot runs with an optional attached minus sign,
/// trimmed of trailing punctuation: "at -9,137.50." yields "-9,137.50".
std::vector<std::string> numeric_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        bool minus = begin > 0 && text[begin - 1] == '-' &&
                     (begin == 1 || !alnum(text[begin - 2]));
        if (begin > 0 && !minus && alnum(text[begin - 1])) {
            // part of a word like K200; skip the whole run
            while (i < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i])) ||
                    text[i] == ',' || text[i] == '.'))
                ++i;
            continue;
        }
        std::size_t end = begin;
        while (end < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[end])) ||
                text[end] == ',' || text[end] == '.'))
            ++end;
        std::string token = text.substr(begin, end - begin);
        while (!token.empty() &&
               !std::isdigit(static_cast<unsigned char>(token.back())))
            token.pop_back();
        if (minus) token.insert(token.begin(), '-');
        out.push_back(std::move(token));
        i = end;
    }
    return out;
}

// ----- comparison table shape -------------------------------------------------

struct CompanyGroup {
    std::string prefix;
    std::size_t abbrv_col = 0;
    std::optional<std::size_t> code_col;
    std::vector<std::pair<std::string, std::size_t>> metric_cols;
};

struct ComparisonShape {
    std::size_t year_col = 0;
    std::vector<CompanyGroup> groups;
    std::vector<std::string> metrics;  // shared across groups, column order
};

ComparisonShape parse_comparison_shape(const ResultTable& table) {
    ComparisonShape shape;
    std::size_t year = table.column_index("year");
    if (year == ResultTable::npos)
        throw ShapeMismatch("comparison table has no year column");
    shape.year_col = year;

    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        const std::string& c = table.columns[i];
        if (ends_with(c, "_stock_abbrv")) {
            CompanyGroup g;
            g.prefix = c.substr(0, c.size() - std::string("_stock_abbrv").size());
            g.abbrv_col = i;
            shape.groups.push_back(std::move(g));
        }
    }
    if (shape.groups.size() < 2)
        throw ShapeMismatch(
            "comparison table needs at least two company column groups");

    // longest matching prefix wins, so sk_hynix beats a hypothetical sk
    auto owner_of = [&](const std::string& c) -> CompanyGroup* {
        CompanyGroup* best = nullptr;
        for (CompanyGroup& g : shape.groups) {
            if (c.rfind(g.prefix + "_", 0) != 0) continue;
            if (!best || g.prefix.size() > best->prefix.size()) best = &g;
        }
        return best;
    };

    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i == year) continue;
        const std::string& c = table.columns[i];
        if (ends_with(c, "_stock_abbrv")) continue;
        CompanyGroup* g = owner_of(c);
        if (!g)
            throw ShapeMismatch("unexpected column " + c +
                                " in comparison table");
        std::string suffix = c.substr(g->prefix.size() + 1);
        if (suffix == "stock_code")
            g->code_col = i;
        else
            g->metric_cols.emplace_back(suffix, i);
    }

    for (const CompanyGroup& g : shape.groups) {
        std::vector<std::string> metrics;
        for (const auto& [name, col] : g.metric_cols) metrics.push_back(name);
        if (shape.metrics.empty())
            shape.metrics = metrics;
        else if (shape.metrics != metrics)
            throw ShapeMismatch("company column groups disagree on metrics");
    }
    if (shape.metrics.empty())
        throw ShapeMismatch("comparison table carries no metric columns");
    return shape;
}

// one company series: a column group plus the display name found in its rows
struct Series {
    std::string name;
    // metric -> year -> value (nullopt = Null cell or absent row)
    std::map<std::string, std::map<std::int64_t, std::optional<double>>> values;
};

struct ComparisonData {
    std::vector<std::int64_t> years;  // ascending, deduplicated
    std::vector<Series> series;       // group order, then first appearance
    std::vector<std::string> metrics;
};

ComparisonData collect_comparison(const ResultTable& table) {
    ComparisonShape shape = parse_comparison_shape(table);
    ComparisonData data;
    data.metrics = shape.metrics;

    std::set<std::int64_t> years;
    std::map<std::pair<std::size_t, std::string>, std::size_t> series_index;
    for (const auto& row : table.rows) {
        auto year = cell_year(row[shape.year_col]);
        if (!year)
            throw ShapeMismatch("year column must hold integers");
        years.insert(*year);
        for (std::size_t gi = 0; gi < shape.groups.size(); ++gi) {
            const CompanyGroup& g = shape.groups[gi];
            std::string name = cell_string(row[g.abbrv_col]).value_or("");
            if (name.empty() && g.code_col)
                name = cell_string(row[*g.code_col]).value_or("");
            if (name.empty()) name = g.prefix;

            auto key = std::make_pair(gi, name);
            auto it = series_index.find(key);
            if (it == series_index.end()) {
                it = series_index.emplace(key, data.series.size()).first;
                data.series.push_back(Series{name, {}});
            }
            Series& s = data.series[it->second];
            for (const auto& [metric, col] : g.metric_cols)
                s.values[metric][*year] = cell_numeric(row[col]);
        }
    }
    data.years.assign(years.begin(), years.end());
    return data;
}

std::optional<double> series_value(const Series& s, const std::string& metric,
                                   std::int64_t year) {
    auto mit = s.values.find(metric);
    if (mit == s.values.end()) return std::nullopt;
    auto yit = mit->second.find(year);
    if (yit == mit->second.end()) return std::nullopt;
    return yit->second;
}

// ----- screen aggregation -------------------------------------------------------

struct CompanyRows {
    std::string code;
    std::string name;
    // year -> (per, pbr, eps)
    std::map<std::int64_t, std::array<std::optional<double>, 3>> by_year;
};

std::optional<double> mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    double sum = 0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

const char* bucket_name(Bucket b) {
    switch (b) {
        case Bucket::Undervalued: return "undervalued";
        case Bucket::Growth: return "growth";
        case Bucket::Neither: return "neither";
    }
    return "neither";
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    std::size_t dot = s.find('.');
    std::size_t first_digit = s[0] == '-' ? 1 : 0;
    for (std::size_t i = dot; i > first_digit + 3; ) {
        i -= 3;
        s.insert(i, ",");
    }
    return s;
}

std::string format_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Null: return "null";
        case Value::Kind::Text: return v.as_text();
        case Value::Kind::Integer: return std::to_string(v.as_integer());
        case Value::Kind::Float: return format_number(v.as_floating());
        case Value::Kind::Boolean: return v.as_boolean() ? "true" : "false";
        case Value::Kind::TextList: {
            std::string out = "[";
            const auto& xs = v.as_text_list();
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ", ";
                out += xs[i];
            }
            return out + "]";
        }
    }
    return "null";
}

BaselineMap sector_stats(const ResultTable& table) {
    std::vector<std::string> missing;
    for (const char* col : {"year", "per", "pbr", "eps"})
        if (table.column_index(col) == ResultTable::npos) missing.push_back(col);
    if (!missing.empty()) {
        std::string msg = "screen table is missing columns:";
        for (const std::string& m : missing) msg += " " + m;
        throw MissingColumns(msg);
    }

    std::size_t year_col = table.column_index("year");
    std::map<std::pair<std::int64_t, std::string>, std::vector<double>> cells;
    for (const auto& row : table.rows) {
        auto year = cell_year(row[year_col]);
        if (!year) continue;
        for (const std::string& metric : indicator_metrics()) {
            auto v = cell_numeric(row[table.column_index(metric)]);
            if (v) cells[{*year, metric}].push_back(*v);
        }
    }

    BaselineMap out;
    for (const auto& [key, xs] : cells) {
        double mean = *mean_of(xs);
        double var = 0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size());
        out[key] = SectorBaseline{mean, std::sqrt(var)};
    }
    return out;
}

std::vector<TrendStat> yoy_trends(const ResultTable& table) {
    ComparisonData data = collect_comparison(table);
    std::vector<TrendStat> out;
    for (const std::string& metric : data.metrics) {
        for (const Series& s : data.series) {
            for (std::int64_t year : data.years) {
                auto v = series_value(s, metric, year);
                if (!v) continue;
                TrendStat t;
                t.company = s.name;
                t.metric = metric;
                t.year = year;
                t.value = *v;
                auto prior = series_value(s, metric, year - 1);
                if (prior && *prior != 0)
                    t.yoy_pct = 100.0 * (*v - *prior) / std::fabs(*prior);
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

AnswerReport summarize_comparison(const ResultTable& table) {
    ComparisonData data = collect_comparison(table);
    AnswerReport report;

    for (const std::string& metric : data.metrics) {
        ReportSection section;
        section.heading = human_metric(metric);

        ResultTable slice;
        slice.columns = {"company", "year", "value", "yoy_pct"};
        for (const Series& s : data.series) {
            for (std::int64_t year : data.years) {
                auto v = series_value(s, metric, year);
                std::optional<double> yoy;
                auto prior = series_value(s, metric, year - 1);
                if (v && prior && *prior != 0)
                    yoy = 100.0 * (*v - *prior) / std::fabs(*prior);
                slice.rows.push_back({Value::text(s.name),
                                      Value::integer(year), value_or_null(v),
                                      value_or_null(yoy)});
            }
        }

        // per-year leader sentences
        std::map<std::int64_t, std::string> leader_by_year;
        for (std::int64_t year : data.years) {
            std::optional<double> best;
            std::vector<const Series*> leaders;
            for (const Series& s : data.series) {
                auto v = series_value(s, metric, year);
                if (!v) continue;
                if (!best || *v > *best) {
                    best = *v;
                    leaders = {&s};
                } else if (*v == *best) {
                    leaders.push_back(&s);
                }
            }
            std::string y = std::to_string(year);
            if (!best) {
                section.narrative.push_back("In " + y + ", no " +
                                            human_metric(metric) +
                                            " data is available.");
            } else if (leaders.size() > 1) {
                section.narrative.push_back("In " + y + ", " +
                                            human_metric(metric) +
                                            " is tied at " +
                                            format_number(*best) + ".");
            } else {
                leader_by_year[year] = leaders[0]->name;
                section.narrative.push_back(
                    "In " + y + ", " + leaders[0]->name + " leads " +
                    human_metric(metric) + " at " + format_number(*best) + ".");
            }
        }

        // lead change between the first and last year with a unique leader
        if (!leader_by_year.empty()) {
            const auto& first = *leader_by_year.begin();
            const auto& last = *leader_by_year.rbegin();
            if (first.first != last.first && first.second != last.second)
                section.narrative.push_back(
                    last.second + " overtakes " + first.second + " in " +
                    human_metric(metric) + " by " +
                    std::to_string(last.first) + ".");
        }

        // scale sentence: the paper's "larger overall revenue scale"
        if (metric == "revenue") {
            std::optional<double> best_sum;
            std::vector<const Series*> leaders;
            for (const Series& s : data.series) {
                double sum = 0;
                bool any = false;
                for (std::int64_t year : data.years) {
                    auto v = series_value(s, metric, year);
                    if (v) {
                        sum += *v;
                        any = true;
                    }
                }
                if (!any) continue;
                if (!best_sum || sum > *best_sum) {
                    best_sum = sum;
                    leaders = {&s};
                } else if (sum == *best_sum) {
                    leaders.push_back(&s);
                }
            }
            if (best_sum && leaders.size() == 1) {
                const char* larger =
                    data.series.size() > 2 ? "largest" : "larger";
                section.narrative.push_back(
                    leaders[0]->name + " maintains the " + larger +
                    " overall revenue scale across the period.");
            } else if (best_sum) {
                section.narrative.push_back(
                    "Overall revenue scale is tied across the period.");
            }
        }

        // flag the holes so the comparison is honest about them
        for (std::int64_t year : data.years)
            for (const Series& s : data.series)
                if (!series_value(s, metric, year))
                    section.narrative.push_back(
                        "Data gap: " + s.name + " has no " +
                        human_metric(metric) + " value for " +
                        std::to_string(year) + ".");

        section.table = std::move(slice);
        report.sections.push_back(std::move(section));
    }
    return report;
}

AnswerReport summarize_screen(const ResultTable& table) {
    std::vector<std::string> missing;
    for (const char* col :
         {"stock_code", "stock_abbrv", "year", "per", "pbr", "eps"})
        if (table.column_index(col) == ResultTable::npos) missing.push_back(col);
    if (!missing.empty()) {
        std::string msg = "screen table is missing columns:";
        for (const std::string& m : missing) msg += " " + m;
        throw ShapeMismatch(msg);
    }

    BaselineMap baselines = sector_stats(table);
    std::size_t code_col = table.column_index("stock_code");
    std::size_t name_col = table.column_index("stock_abbrv");
    std::size_t year_col = table.column_index("year");
    std::array<std::size_t, 3> metric_col{table.column_index("per"),
                                          table.column_index("pbr"),
                                          table.column_index("eps")};

    std::vector<CompanyRows> companies;
    std::map<std::string, std::size_t> by_code;
    for (const auto& row : table.rows) {
        auto year = cell_year(row[year_col]);
        if (!year) continue;
        std::string code = cell_string(row[code_col]).value_or("");
        if (code.empty()) code = cell_string(row[name_col]).value_or("");
        if (code.empty()) continue;

        auto it = by_code.find(code);
        if (it == by_code.end()) {
            it = by_code.emplace(code, companies.size()).first;
            companies.push_back(CompanyRows{code, "", {}});
        }
        CompanyRows& c = companies[it->second];
        if (c.name.empty())
            c.name = cell_string(row[name_col]).value_or(code);
        auto& slot = c.by_year[*year];
        for (std::size_t m = 0; m < 3; ++m)
            slot[m] = cell_numeric(row[metric_col[m]]);
    }

    // sector means and deviations averaged over the years they exist for
    auto averaged = [&](const std::string& metric)
        -> std::optional<SectorBaseline> {
        std::vector<double> means, stds;
        for (const auto& [key, b] : baselines) {
            if (key.second != metric) continue;
            means.push_back(b.mean);
            stds.push_back(b.stddev);
        }
        if (means.empty()) return std::nullopt;
        return SectorBaseline{*mean_of(means), *mean_of(stds)};
    };
    std::optional<SectorBaseline> per_base = averaged("per");
    std::optional<SectorBaseline> pbr_base = averaged("pbr");

    struct Judged {
        std::size_t index;
        Bucket bucket = Bucket::Neither;
        std::optional<double> mean_per;
        std::optional<double> mean_pbr;
    };
    std::vector<Judged> judged;
    for (std::size_t i = 0; i < companies.size(); ++i) {
        const CompanyRows& c = companies[i];
        std::vector<double> pers, pbrs;
        std::vector<std::pair<std::int64_t, double>> eps_series;
        bool eps_all_positive = true;
        for (const auto& [year, metrics] : c.by_year) {
            if (metrics[0]) pers.push_back(*metrics[0]);
            if (metrics[1]) pbrs.push_back(*metrics[1]);
            if (metrics[2]) {
                eps_series.emplace_back(year, *metrics[2]);
                if (*metrics[2] <= 0) eps_all_positive = false;
            }
        }
        Judged j;
        j.index = i;
        j.mean_per = mean_of(pers);
        j.mean_pbr = mean_of(pbrs);

        bool undervalued = j.mean_per && per_base &&
                           *j.mean_per < per_base->mean && j.mean_pbr &&
                           pbr_base && *j.mean_pbr < pbr_base->mean &&
                           eps_all_positive;
        bool eps_rising = eps_series.size() >= 2;
        for (std::size_t k = 1; k < eps_series.size(); ++k)
            if (eps_series[k].second <= eps_series[k - 1].second)
                eps_rising = false;
        bool growth = !undervalued && eps_rising && j.mean_per && per_base &&
                      *j.mean_per <= per_base->mean + per_base->stddev;
        j.bucket = undervalued ? Bucket::Undervalued
                   : growth    ? Bucket::Growth
                               : Bucket::Neither;
        judged.push_back(j);
    }

    std::stable_sort(judged.begin(), judged.end(),
                     [&](const Judged& a, const Judged& b) {
                         if (a.bucket != b.bucket)
                             return static_cast<int>(a.bucket) <
                                    static_cast<int>(b.bucket);
                         bool ha = a.mean_per.has_value();
                         bool hb = b.mean_per.has_value();
                         if (ha != hb) return ha;
                         if (ha && *a.mean_per != *b.mean_per)
                             return *a.mean_per < *b.mean_per;
                         return companies[a.index].code <
                                companies[b.index].code;
                     });

    AnswerReport report;

    ReportSection baseline_section;
    baseline_section.heading = "sector baselines";
    baseline_section.narrative.push_back(
        "Baselines are the population mean and standard deviation of each "
        "indicator over the screened rows, per year.");
    ResultTable baseline_table;
    baseline_table.columns = {"year", "metric", "mean", "stddev"};
    std::set<std::int64_t> baseline_years;
    for (const auto& [key, b] : baselines) baseline_years.insert(key.first);
    for (std::int64_t year : baseline_years) {
        for (const std::string& metric : indicator_metrics()) {
            auto it = baselines.find({year, metric});
            if (it == baselines.end()) continue;
            baseline_table.rows.push_back(
                {Value::integer(year), Value::text(metric),
                 Value::floating(it->second.mean),
                 Value::floating(it->second.stddev)});
        }
    }
    baseline_section.table = std::move(baseline_table);
    report.sections.push_back(std::move(baseline_section));

    auto bucket_section = [&](Bucket bucket, const std::string& heading,
                              const std::string& lead,
                              const std::string& empty_sentence) {
        ReportSection section;
        section.heading = heading;
        ResultTable t;
        t.columns = {"stock_code", "stock_abbrv", "mean_per", "mean_pbr"};
        std::string names;
        for (const Judged& j : judged) {
            if (j.bucket != bucket) continue;
            const CompanyRows& c = companies[j.index];
            if (!names.empty()) names += ", ";
            names += c.name + " (" + c.code + ")";
            t.rows.push_back({Value::text(c.code), Value::text(c.name),
                              value_or_null(j.mean_per),
                              value_or_null(j.mean_pbr)});
        }
        if (t.rows.empty()) {
            section.narrative.push_back(empty_sentence);
        } else {
            section.narrative.push_back(lead + ": " + names + ".");
            section.table = std::move(t);
        }
        report.sections.push_back(std::move(section));
    };
    bucket_section(Bucket::Undervalued, "undervalued",
                   "Undervalued, with low PER and PBR and positive EPS",
                   "No companies met the undervalued criteria.");
    bucket_section(Bucket::Growth, "growth potential",
                   "Showing growth potential, with rising EPS and moderate PER",
                   "No companies met the growth criteria.");
    bucket_section(Bucket::Neither, "no signal", "Outside both buckets",
                   "Every screened company fell into a bucket.");

    ReportSection method;
    method.heading = "method";
    method.narrative = {
        "A company is undervalued when its mean PER and mean PBR both sit "
        "below the sector means averaged over the screened years and every "
        "reported EPS is positive.",
        "A company shows growth potential when it is not undervalued, its "
        "EPS strictly increases across at least two available years, and its "
        "mean PER stays within one standard deviation above the sector mean.",
        "Undervalued takes precedence when both rule sets match.",
        "These thresholds are a fixed formalization of qualitative analyst "
        "vocabulary chosen for this engine; they are not investment advice."};
    report.sections.push_back(std::move(method));

    for (const Judged& j : judged) {
        const CompanyRows& c = companies[j.index];
        ScreenClassification cls;
        cls.company_code = c.code;
        cls.company_name = c.name;
        cls.bucket = j.bucket;
        cls.evidence.columns = {"year",     "per",        "pbr",
                                "eps",      "per_mean",   "per_stddev",
                                "pbr_mean", "pbr_stddev", "eps_mean",
                                "eps_stddev"};
        for (const auto& [year, metrics] : c.by_year) {
            std::vector<Cell> row{Value::integer(year), value_or_null(metrics[0]),
                                  value_or_null(metrics[1]),
                                  value_or_null(metrics[2])};
            for (const std::string& metric : indicator_metrics()) {
                auto it = baselines.find({year, metric});
                if (it == baselines.end()) {
                    row.push_back(Value::null());
                    row.push_back(Value::null());
                } else {
                    row.push_back(Value::floating(it->second.mean));
                    row.push_back(Value::floating(it->second.stddev));
                }
            }
            cls.evidence.rows.push_back(std::move(row));
        }
        report.classifications.push_back(std::move(cls));
    }
    return report;
}

namespace {

AnswerReport price_facts(const ResultTable& table) {
    for (const char* col : {"stock_abbrv", "date", "open", "close", "high", "low"})
        if (table.column_index(col) == ResultTable::npos)
            throw ShapeMismatch(std::string("price table is missing column ") +
                                col);
    const auto& row = table.rows.front();
    auto text_at = [&](const char* col) {
        const Cell& c = row[table.column_index(col)];
        const Value* v = std::get_if<Value>(&c);
        return v ? format_value(*v) : std::string("null");
    };

    AnswerReport report;
    ReportSection section;
    section.heading = "price facts";
    section.narrative.push_back(
        text_at("stock_abbrv") + " traded on " + text_at("date") + ": open " +
        text_at("open") + ", close " + text_at("close") + ", high " +
        text_at("high") + ", low " + text_at("low") + ".");

    bool has_year = table.column_index("year") != ResultTable::npos &&
                    cell_year(row[table.column_index("year")]).has_value();
    bool has_quarter = table.column_index("quarter") != ResultTable::npos &&
                       cell_year(row[table.column_index("quarter")]).has_value();
    if (has_year && has_quarter)
        section.narrative.push_back("The date falls in year " +
                                    text_at("year") + ", quarter " +
                                    text_at("quarter") + ".");
    else if (has_year)
        section.narrative.push_back("The date falls in year " +
                                    text_at("year") + ".");
    else if (has_quarter)
        section.narrative.push_back("The date falls in quarter " +
                                    text_at("quarter") + ".");

    section.table = table;
    report.sections.push_back(std::move(section));
    return report;
}

}  // namespace

AnswerReport compose(const std::string& question,
                     const TranslationResult& translation,
                     const ResultTable& table) {
    AnswerReport report;
    if (const auto* u = std::get_if<Unsupported>(&translation.intent)) {
        ReportSection section;
        section.heading = "unsupported question";
        section.narrative.push_back(u->reason);
        report.sections.push_back(std::move(section));
    } else if (table.rows.empty()) {
        ReportSection section;
        section.heading = "result";
        section.narrative.push_back("No matching data was found.");
        report.sections.push_back(std::move(section));
    } else if (std::holds_alternative<CompetitorFinancialComparison>(
                   translation.intent)) {
        report = summarize_comparison(table);
    } else if (std::holds_alternative<SectorIndicatorScreen>(
                   translation.intent)) {
        report = summarize_screen(table);
    } else {
        report = price_facts(table);
    }
    report.intent = translation.intent;
    report.provenance.question = question;
    report.provenance.query_text = translation.query_text;
    report.provenance.notes = translation.notes;
    report.provenance.row_count = table.rows.size();
    return report;
}

namespace {

std::string render_table(const ResultTable& t, const std::string& indent) {
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        width[i] = t.columns[i].size();
    std::vector<std::vector<std::string>> texts;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Value* v = std::get_if<Value>(&row[i]);
            line.push_back(v ? format_value(*v) : cell_text(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
        texts.push_back(std::move(line));
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        out << indent;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) out << " | ";
            out << line[i];
            if (i + 1 < line.size())
                out << std::string(width[i] - line[i].size(), ' ');
        }
        out << "\n";
    };
    emit(t.columns);
    for (const auto& line : texts) emit(line);
    return out.str();
}

nlohmann::json table_json(const ResultTable& t) {
    return nlohmann::json::parse(t.to_json());
}

}  // namespace

std::string report_to_text(const AnswerReport& report) {
    std::ostringstream out;
    for (const ReportSection& section : report.sections) {
        out << "== " << section.heading << " ==\n";
        for (const std::string& sentence : section.narrative)
            out << sentence << "\n";
        if (section.table) out << render_table(*section.table, "  ");
        out << "\n";
    }
    if (!report.classifications.empty()) {
        out << "== classifications ==\n";
        for (const ScreenClassification& cls : report.classifications) {
            out << "[" << bucket_name(cls.bucket) << "] " << cls.company_name
                << " (" << cls.company_code << ")\n";
            out << render_table(cls.evidence, "  ");
        }
        out << "\n";
    }
    out << "== provenance ==\n";
    out << "question: " << report.provenance.question << "\n";
    out << "rows: " << report.provenance.row_count << "\n";
    for (const std::string& note : report.provenance.notes)
        out << "note: " << note << "\n";
    if (!report.provenance.query_text.empty()) {
        out << "query:\n";
        std::istringstream lines(report.provenance.query_text);
        std::string line;
        while (std::getline(lines, line)) out << "  " << line << "\n";
    }
    return out.str();
}

std::string report_to_json(const AnswerReport& report) {
    nlohmann::json doc;
    doc["intent"] = intent_name(report.intent);
    nlohmann::json sections = nlohmann::json::array();
    for (const ReportSection& section : report.sections) {
        nlohmann::json s{{"heading", section.heading},
                         {"narrative", section.narrative}};
        s["table"] =
            section.table ? table_json(*section.table) : nlohmann::json();
        sections.push_back(std::move(s));
    }
    doc["sections"] = std::move(sections);
    nlohmann::json classifications = nlohmann::json::array();
    for (const ScreenClassification& cls : report.classifications) {
        classifications.push_back({{"company_code", cls.company_code},
                                   {"company_name", cls.company_name},
                                   {"bucket", bucket_name(cls.bucket)},
                                   {"evidence", table_json(cls.evidence)}});
    }
    doc["classifications"] = std::move(classifications);
    doc["provenance"] = {{"question", report.provenance.question},
                         {"query", report.provenance.query_text},
                         {"notes", report.provenance.notes},
                         {"rows", report.provenance.row_count}};
    return doc.dump(2);
}

std::vector<std::string> faithfulness_violations(const AnswerReport& report) {
    std::vector<std::string> out;
    for (const ReportSection& section : report.sections) {
        std::set<std::string> allowed;
        if (section.table) {
            for (const auto& row : section.table->rows) {
                for (const Cell& c : row) {
                    const Value* v = std::get_if<Value>(&c);
                    std::string text = v ? format_value(*v) : cell_text(c);
                    for (std::string& tok : numeric_tokens(text))
                        allowed.insert(std::move(tok));
                }
            }
        }
        for (const std::string& sentence : section.narrative) {
            for (const std::string& tok : numeric_tokens(sentence)) {
                if (!section.table)
                    out.push_back("section '" + section.heading +
                                  "' has no table but mentions " + tok);
                else if (!allowed.count(tok))
                    out.push_back("section '" + section.heading +
                                  "' mentions " + tok +
                                  " which is not in its table");
            }
        }
    }
    return out;
}

}  // namespace marketgraph

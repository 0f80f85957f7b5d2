#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "marketgraph/question.hpp"
#include "marketgraph/table.hpp"
#include "marketgraph/translate.hpp"

namespace marketgraph {

// Deterministic answer composition: fixed sentence templates over result
// tables, with every number in the prose backed by a cell in the section's
// evidence slice. No generative text, no advice beyond the documented rules.

struct ReportSection {
    std::string heading;
    std::vector<std::string> narrative;  // template sentences, in order
    std::optional<ResultTable> table;    // evidence slice backing the prose
};

/// One company-year observation of one metric, with the year-over-year move.
/// yoy_pct = 100 * (v_t - v_prev) / |v_prev|; absent for the first year and
/// when the prior value is zero or absent.
struct TrendStat {
    std::string company;
    std::string metric;
    std::int64_t year = 0;
    double value = 0;
    std::optional<double> yoy_pct;
};

enum class Bucket { Undervalued, Growth, Neither };

/// "undervalued" | "growth" | "neither".
const char* bucket_name(Bucket b);

struct SectorBaseline {
    double mean = 0;
    double stddev = 0;  // population standard deviation
};

/// (year, metric name) -> baseline. Metric names are the indicator columns:
/// per, pbr, eps.
using BaselineMap = std::map<std::pair<std::int64_t, std::string>, SectorBaseline>;

struct ScreenClassification {
    std::string company_code;
    std::string company_name;
    Bucket bucket = Bucket::Neither;
    // per-year indicator values next to the sector baselines they were
    // judged against: year, per, pbr, eps, <metric>_mean, <metric>_stddev
    ResultTable evidence;
};

struct Provenance {
    std::string question;
    std::string query_text;
    std::vector<std::string> notes;  // translation notes, defaults applied
    std::size_t row_count = 0;
};

struct AnswerReport {
    QuestionIntent intent;
    std::vector<ReportSection> sections;
    std::vector<ScreenClassification> classifications;  // screens only
    Provenance provenance;
};

/// Per-(year, metric) mean and population standard deviation over the
/// non-Null cells of a screen-shaped table (columns year, per, pbr, eps).
/// Groups with zero usable cells are absent. Throws MissingColumns.
BaselineMap sector_stats(const ResultTable& table);

/// Year-over-year trend statistics for a comparison-shaped table (a year
/// column plus per-company <prefix>_stock_abbrv and <prefix>_<metric>
/// columns). Ordered by metric column order, then company column order, then
/// year ascending. Throws ShapeMismatch.
std::vector<TrendStat> yoy_trends(const ResultTable& table);

/// One section per metric: per-year leader sentences, data-gap flags, a
/// lead-change sentence when the last year's leader differs from the first
/// year's, a revenue-scale sentence, and the TrendStat slice as evidence.
/// Throws ShapeMismatch.
AnswerReport summarize_comparison(const ResultTable& table);

/// Bucket classification against sector baselines. Undervalued: mean per and
/// mean pbr below the sector means averaged over years, and every non-Null
/// eps positive. Growth: not undervalued, eps strictly increasing across at
/// least two available years, and mean per within one standard deviation
/// above the sector mean. Undervalued wins when both apply. Companies are
/// listed undervalued first, then growth, then neither, each bucket by
/// ascending mean per. Throws ShapeMismatch.
AnswerReport summarize_screen(const ResultTable& table);

/// Dispatch on the translated intent: comparisons and screens go to their
/// summarizers, price lookups render a facts section, unsupported questions
/// render the reason. An empty table becomes a "no matching data" report.
/// Provenance (question, query text, notes, row count) is always embedded.
AnswerReport compose(const std::string& question,
                     const TranslationResult& translation,
                     const ResultTable& table);

/// Fixed number surface: two decimals, thousands grouped with commas,
/// "-0.00" normalized to "0.00".
std::string format_number(double v);

/// Report cell surface: Null -> "null", Integer -> plain digits, Float ->
/// format_number, Text verbatim, Boolean -> "true"/"false".
std::string format_value(const Value& v);

/// Rendered terminal text; a golden surface.
std::string report_to_text(const AnswerReport& report);

/// JSON document; a golden surface.
std::string report_to_json(const AnswerReport& report);

/// The faithfulness scan: every numeric token in a section's narrative must
/// equal a formatted cell token of that section's table; sections without a
/// table must carry no numbers. Provenance is exempt (it echoes inputs).
/// Returns one message per violation; empty means faithful.
std::vector<std::string> faithfulness_violations(const AnswerReport& report);

}  // namespace marketgraph

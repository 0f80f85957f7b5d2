#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "marketgraph/graph.hpp"

namespace marketgraph {

// Bounded intent taxonomy for natural-language questions. Classification is
// rule-based and deterministic: keyword cues pick the intent, the entity
// lexicon and digit scanning fill in the slots. Anything outside the
// taxonomy becomes Unsupported, which is a value, not an error.

/// A company mention: a stock code, a surface name, or both. Resolution
/// against the graph happens at translation time.
struct CompanyRef {
    std::optional<std::string> code;
    std::optional<std::string> name;
    std::optional<NodeId> resolved_id;
};

struct SectorRef {
    std::string name;
    std::optional<NodeId> resolved_id;
};

enum class Metric { Revenue, OperatingIncome, NetIncome };

/// The FinancialStatements property the metric projects ("revenue", ...).
const char* metric_property(Metric m);

struct CompetitorFinancialComparison {
    CompanyRef anchor;
    std::vector<CompanyRef> competitors;  // empty = resolve via COMPETES_WITH
    std::vector<std::int64_t> years;      // ascending, deduplicated, non-empty
    std::vector<Metric> metrics;          // canonical order, non-empty
};

struct SectorIndicatorScreen {
    std::variant<CompanyRef, SectorRef> anchor;
    std::vector<std::int64_t> years;  // ascending, deduplicated, non-empty
    // the question text carries no thresholds, so the screen always runs the
    // default predicate; kept as text for reports
    std::string predicate;
};

/// The default screen predicate text: (ind.per < 10 OR ind.pbr < 1 OR
/// ind.eps > 0).
const std::string& default_screen_predicate();

struct PriceLookup {
    CompanyRef company;
    std::string date;  // YYYYMMDD
};

struct Unsupported {
    std::string reason;
};

using QuestionIntent = std::variant<CompetitorFinancialComparison,
                                    SectorIndicatorScreen, PriceLookup,
                                    Unsupported>;

/// Stable lowercase tag for reports: "competitor_financial_comparison",
/// "sector_indicator_screen", "price_lookup", "unsupported".
const char* intent_name(const QuestionIntent& intent);

/// Entity surface forms harvested from the graph: every Company is reachable
/// through its stock_code, stock_nm, stock_abbrv, and stock_nm_eng; every
/// Sector through stock_sector_nm. Lookup keys are lowercased; matching is
/// case-insensitive exact (no fuzzy matching).
struct Lexicon {
    struct Company {
        std::string code;
        std::string abbrv;
    };
    std::map<std::string, std::string> company_surfaces;  // surface -> code
    std::map<std::string, std::string> sector_surfaces;   // surface -> name
    std::map<std::string, Company> companies;             // by code
};

Lexicon build_lexicon(const PropertyGraph& g);

/// The rule table, applied in order:
///   0. prediction cues ("tomorrow", "predict", "forecast") => Unsupported
///   1. comparison cues ("compare", "competitor", "performance trends", ...)
///      + at least one statement metric term + a company mention
///      => CompetitorFinancialComparison
///   2. sector cues ("same industry", "sector", "undervalued", "growth
///      potential") + at least one indicator term (per/pbr/eps spellings)
///      => SectorIndicatorScreen
///   3. a company mention + exactly one date + price vocabulary
///      => PriceLookup
///   4. anything else => Unsupported
/// Explicit `(stock code: XXXXXX)` spans override name matching for the
/// mention they annotate. Standalone four-digit numbers in [1900, 2999] are
/// years; eight-digit calendar values and YYYY-MM-DD forms are dates. The
/// first two intents require a non-empty years list.
QuestionIntent classify_and_extract(const std::string& question,
                                    const Lexicon& lexicon);

}  // namespace marketgraph

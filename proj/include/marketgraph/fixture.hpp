#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace marketgraph {

// Deterministic synthetic record files standing in for the live market data
// APIs. Same (spec, seed) in, byte-identical files out.

struct IndicatorOverride {
    std::int64_t year = 0;
    double per = 0;
    double pbr = 0;
    double eps = 0;
};

struct StatementOverride {
    std::int64_t year = 0;
    double revenue = 0;
    double operating_income = 0;
    double net_income = 0;
};

struct FixtureCompany {
    std::string code;
    std::string name;        // stock_nm
    std::string abbrv;       // stock_abbrv
    std::string name_eng;    // stock_nm_eng
    std::string listing_dt;  // YYYYMMDD
    std::string market;      // market_nm
    std::string sector;
    std::int64_t outstanding_shares = 0;
    bool kospi200 = false;
    std::vector<std::string> competitors;  // stock codes

    // empty = values generated from the seed; non-empty = exactly these
    std::vector<IndicatorOverride> indicators;
    std::vector<StatementOverride> statements;
};

struct FixtureSpec {
    std::string name;
    std::int64_t first_year = 2023;
    std::int64_t last_year = 2025;
    std::vector<std::string> price_dates;  // one price row per company per date
    std::vector<FixtureCompany> companies;
};

struct FixtureFiles {
    std::string companies_csv;
    std::string prices_csv;
    std::string indicators_csv;
    std::string statements_jsonl;

    /// Writes the four files into dir (created if missing). Throws IoFailure.
    void write(const std::string& dir) const;
};

/// Record files for the spec: one company row per entry, one price row per
/// (company, price date), one indicator row per (company, year) dated April
/// 1st of that year, one annual statement per (company, year). Overrides
/// replace the generated values for their company. Throws BadSpec for
/// unusable specs (no companies, bad year range, bad codes or dates,
/// override years outside the range).
FixtureFiles generate_fixture(const FixtureSpec& spec, std::uint64_t seed);

/// The canonical demo: sector "Semiconductor", 12 companies, 2023-2025, with
/// hand-picked indicator values so the screening buckets are stable and
/// hand-picked anchor financials so the comparison narrative has shape.
const FixtureSpec& demo_spec();

/// Randomized spec for property tests. Always contains the demo's two anchor
/// companies (005930, 000660) sharing a sector so the case-study questions
/// resolve, plus up to six generated peers; years always cover 2023-2025.
FixtureSpec random_spec(std::mt19937_64& rng);

}  // namespace marketgraph

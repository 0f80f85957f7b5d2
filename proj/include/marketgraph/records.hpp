#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace marketgraph {

// Flat-file record shapes for the data sources feeding the graph: company
// master, daily prices, indicator snapshots, financial statements. Parsing
// is structural (field shapes); validate() checks the domain invariants.
// Every record remembers where it came from so rejects can say so.

struct CompanyRecord {
    std::string stock_code;   // ^[0-9A-Z]{6}$
    std::string stock_nm;
    std::string stock_abbrv;
    std::string stock_nm_eng;
    std::string listing_dt;   // YYYYMMDD
    std::string market_nm;
    std::string sector;
    std::int64_t outstanding_shares = 0;
    bool kospi200_item_yn = false;
    std::vector<std::string> competitors;  // stock codes

    std::string source_file;
    int source_line = 0;
};

struct DailyPriceRecord {
    std::string stock_code;
    std::string date;  // YYYYMMDD
    double open = 0;
    double close = 0;
    double high = 0;
    double low = 0;

    std::string source_file;
    int source_line = 0;
};

struct IndicatorRecord {
    std::string stock_code;
    std::string date;  // YYYYMMDD
    std::optional<double> per;
    std::optional<double> pbr;
    std::optional<double> eps;

    std::string source_file;
    int source_line = 0;
};

struct FinStatementRecord {
    std::string stock_code;
    std::int64_t year = 0;
    std::optional<std::int64_t> quarter;  // absent = annual statement
    std::optional<double> revenue;
    std::optional<double> operating_income;
    std::optional<double> net_income;
    std::optional<double> total_assets;
    std::optional<double> total_liabilities;
    std::optional<double> total_equity;
    std::optional<double> capital_stock;

    std::string source_file;
    int source_line = 0;
};

/// Domain invariant check; the reason for the first violation, or nullopt.
std::optional<std::string> validate(const CompanyRecord& r);
std::optional<std::string> validate(const DailyPriceRecord& r);
std::optional<std::string> validate(const IndicatorRecord& r);
std::optional<std::string> validate(const FinStatementRecord& r);

// ----- calendar text ----------------------------------------------------------

struct DateParts {
    int year = 0;
    int month = 0;
    int day = 0;
    int quarter = 0;  // ⌊(month−1)/3⌋ + 1
};

/// Splits a YYYYMMDD string; Gregorian leap years respected. Throws BadDate.
DateParts date_parts(const std::string& yyyymmdd);
bool valid_date_text(const std::string& yyyymmdd);

// ----- file parsing -----------------------------------------------------------

struct RecordIssue {
    std::string file;
    int line = 0;
    std::string reason;
};

template <typename T>
struct ParsedRecords {
    std::vector<T> records;
    std::vector<RecordIssue> issues;  // structurally unusable rows
};

/// CSV with header: stock_code,stock_nm,stock_abbrv,stock_nm_eng,listing_dt,
/// market_nm,sector,outstanding_shares,kospi200_item_yn,competitors.
/// Competitors are a `;`-separated code list, booleans are "true"/"false".
/// Throws MalformedRecord when the header itself is missing a column.
ParsedRecords<CompanyRecord> parse_company_csv(const std::string& text,
                                               const std::string& file);

/// CSV with header: stock_code,date,open,close,high,low.
ParsedRecords<DailyPriceRecord> parse_price_csv(const std::string& text,
                                                const std::string& file);

/// CSV with header: stock_code,date,per,pbr,eps; empty metric fields mean
/// absent.
ParsedRecords<IndicatorRecord> parse_indicator_csv(const std::string& text,
                                                   const std::string& file);

/// JSON lines, one object per statement: required stock_code and year,
/// optional quarter and the seven metric keys. Unknown keys are ignored.
ParsedRecords<FinStatementRecord> parse_statement_jsonl(const std::string& text,
                                                        const std::string& file);

}  // namespace marketgraph

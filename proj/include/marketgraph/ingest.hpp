#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marketgraph/graph.hpp"
#include "marketgraph/records.hpp"
#include "marketgraph/schema.hpp"

namespace marketgraph {

/// Outcome of an ingest pass. Rejections and warnings are data; the pipeline
/// never stops for a bad record.
struct IngestReport {
    std::size_t loaded = 0;                // records turned into nodes
    std::vector<RecordIssue> rejected;     // dropped records, with reasons
    std::vector<RecordIssue> warnings;     // loaded, but something was off
    std::vector<std::string> unresolved_competitors;  // "from -> missing"

    void merge(IngestReport&& other);
    /// {"loaded": N, "rejected": [...], "unresolved_competitors": [...],
    ///  "warnings": [...]}, pretty-printed.
    std::string to_json() const;
};

/// The equality indexes every market graph is expected to carry. Declaring
/// them twice is harmless.
void declare_market_indexes(PropertyGraph& g);

/// Date / Year / Quarter trio for one YYYYMMDD value, created on demand and
/// wired with IN_YEAR and IN_QUARTER exactly once. Idempotent: the same text
/// always resolves to the same node. Throws BadDate.
NodeId build_calendar(PropertyGraph& g, const std::string& date_text);

/// Year and (year, quarter) lookups used by calendar and statement wiring,
/// created on demand. Idempotent.
NodeId year_node(PropertyGraph& g, std::int64_t year);
NodeId quarter_node(PropertyGraph& g, std::int64_t year, std::int64_t quarter);

/// One Company node per record (a duplicate stock_code replaces the earlier
/// node and warns), one Sector node per distinct sector name, BELONGS_TO
/// wiring, and a final competitor-resolution pass over the whole graph that
/// adds a COMPETES_WITH edge in both directions per resolvable code.
/// Unresolvable codes are reported, never fatal. Rejected records are those
/// failing record validation or the schema catalog.
IngestReport ingest_companies(PropertyGraph& g, const SchemaCatalog& catalog,
                              const std::vector<CompanyRecord>& records);

/// StockPrice, Indicator, and FinancialStatements nodes with their company
/// and calendar wiring. Companies must already be loaded; records naming
/// unknown codes are rejected. A duplicate (stock_code, date) price record
/// replaces the earlier node and warns (last wins). Absent optional metrics
/// become absent properties.
IngestReport ingest_timeseries(PropertyGraph& g, const SchemaCatalog& catalog,
                               const std::vector<DailyPriceRecord>& prices,
                               const std::vector<IndicatorRecord>& indicators,
                               const std::vector<FinStatementRecord>& statements);

/// Full pipeline over a directory holding any of companies.csv, prices.csv,
/// indicators.csv, statements.jsonl. Missing files are skipped; a directory
/// with none of them is an IoFailure. Declares the market indexes first.
IngestReport ingest_directory(PropertyGraph& g, const SchemaCatalog& catalog,
                              const std::string& dir);

}  // namespace marketgraph

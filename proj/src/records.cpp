#include "marketgraph/records.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "marketgraph/csv.hpp"
#include "marketgraph/errors.hpp"

namespace marketgraph {

namespace {

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

bool valid_stock_code(const std::string& code) {
    if (code.size() != 6) return false;
    for (char c : code)
        if (!(c >= '0' && c <= '9') && !(c >= 'A' && c <= 'Z')) return false;
    return true;
}

int days_in_month(int year, int month) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return days[month - 1];
}

/// Column positions resolved by header name; order in the file is free.
class ColumnMap {
public:
    ColumnMap(const std::vector<std::string>& header,
              std::initializer_list<const char*> required) {
        for (std::size_t i = 0; i < header.size(); ++i) index_[header[i]] = i;
        for (const char* name : required)
            if (!index_.count(name))
                throw MalformedRecord(1, std::string("header is missing column '") +
                                             name + "'");
        width_ = header.size();
    }

    bool row_usable(const CsvRow& row, const std::string& file,
                    std::vector<RecordIssue>& issues) const {
        if (row.fields.size() == width_) return true;
        issues.push_back({file, row.line,
                          "expected " + std::to_string(width_) + " fields, got " +
                              std::to_string(row.fields.size())});
        return false;
    }

    const std::string& get(const CsvRow& row, const char* name) const {
        return row.fields[index_.at(name)];
    }

private:
    std::map<std::string, std::size_t> index_;
    std::size_t width_ = 0;
};

std::vector<std::string> split_codes(const std::string& joined) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= joined.size()) {
        std::size_t semi = joined.find(';', start);
        std::string piece = joined.substr(
            start, semi == std::string::npos ? std::string::npos : semi - start);
        if (!piece.empty()) out.push_back(std::move(piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

}  // namespace

std::optional<std::string> validate(const CompanyRecord& r) {
    if (!valid_stock_code(r.stock_code))
        return "stock_code '" + r.stock_code + "' does not match ^[0-9A-Z]{6}$";
    if (!valid_date_text(r.listing_dt))
        return "listing_dt '" + r.listing_dt + "' is not a valid YYYYMMDD date";
    if (r.outstanding_shares < 0) return "outstanding_shares is negative";
    for (const auto& code : r.competitors)
        if (!valid_stock_code(code))
            return "competitor code '" + code + "' does not match ^[0-9A-Z]{6}$";
    return std::nullopt;
}

std::optional<std::string> validate(const DailyPriceRecord& r) {
    if (!valid_stock_code(r.stock_code))
        return "stock_code '" + r.stock_code + "' does not match ^[0-9A-Z]{6}$";
    if (!valid_date_text(r.date))
        return "date '" + r.date + "' is not a valid YYYYMMDD date";
    for (double v : {r.open, r.close, r.high, r.low}) {
        if (!std::isfinite(v)) return "price is not finite";
        if (v < 0) return "price is negative";
    }
    if (r.low > std::min(r.open, r.close))
        return "low exceeds min(open, close)";
    if (r.high < std::max(r.open, r.close))
        return "high is below max(open, close)";
    return std::nullopt;
}

std::optional<std::string> validate(const IndicatorRecord& r) {
    if (!valid_stock_code(r.stock_code))
        return "stock_code '" + r.stock_code + "' does not match ^[0-9A-Z]{6}$";
    if (!valid_date_text(r.date))
        return "date '" + r.date + "' is not a valid YYYYMMDD date";
    for (const auto& metric : {r.per, r.pbr, r.eps})
        if (metric && !std::isfinite(*metric)) return "indicator is not finite";
    return std::nullopt;
}

std::optional<std::string> validate(const FinStatementRecord& r) {
    if (!valid_stock_code(r.stock_code))
        return "stock_code '" + r.stock_code + "' does not match ^[0-9A-Z]{6}$";
    if (r.year < 1900 || r.year > 2999) return "year is outside [1900, 2999]";
    if (r.quarter && (*r.quarter < 1 || *r.quarter > 4))
        return "quarter is outside 1..4";
    for (const auto& metric :
         {r.revenue, r.operating_income, r.net_income, r.total_assets,
          r.total_liabilities, r.total_equity, r.capital_stock})
        if (metric && !std::isfinite(*metric)) return "metric is not finite";
    return std::nullopt;
}

DateParts date_parts(const std::string& yyyymmdd) {
    if (yyyymmdd.size() != 8) throw BadDate(yyyymmdd);
    for (char c : yyyymmdd)
        if (c < '0' || c > '9') throw BadDate(yyyymmdd);
    DateParts p;
    p.year = std::stoi(yyyymmdd.substr(0, 4));
    p.month = std::stoi(yyyymmdd.substr(4, 2));
    p.day = std::stoi(yyyymmdd.substr(6, 2));
    if (p.year < 1 || p.month < 1 || p.month > 12 || p.day < 1 ||
        p.day > days_in_month(p.year, p.month))
        throw BadDate(yyyymmdd);
    p.quarter = (p.month - 1) / 3 + 1;
    return p;
}

bool valid_date_text(const std::string& yyyymmdd) {
    try {
        date_parts(yyyymmdd);
        return true;
    } catch (const BadDate&) {
        return false;
    }
}

ParsedRecords<CompanyRecord> parse_company_csv(const std::string& text,
                                               const std::string& file) {
    CsvTable table = parse_csv(text);
    ColumnMap cols(table.header,
                   {"stock_code", "stock_nm", "stock_abbrv", "stock_nm_eng",
                    "listing_dt", "market_nm", "sector", "outstanding_shares",
                    "kospi200_item_yn", "competitors"});
    ParsedRecords<CompanyRecord> out;
    for (const auto& row : table.rows) {
        if (!cols.row_usable(row, file, out.issues)) continue;
        CompanyRecord r;
        r.stock_code = cols.get(row, "stock_code");
        r.stock_nm = cols.get(row, "stock_nm");
        r.stock_abbrv = cols.get(row, "stock_abbrv");
        r.stock_nm_eng = cols.get(row, "stock_nm_eng");
        r.listing_dt = cols.get(row, "listing_dt");
        r.market_nm = cols.get(row, "market_nm");
        r.sector = cols.get(row, "sector");
        if (!parse_int(cols.get(row, "outstanding_shares"), r.outstanding_shares)) {
            out.issues.push_back({file, row.line, "outstanding_shares is not an integer"});
            continue;
        }
        const std::string& flag = cols.get(row, "kospi200_item_yn");
        if (flag == "true") {
            r.kospi200_item_yn = true;
        } else if (flag == "false") {
            r.kospi200_item_yn = false;
        } else {
            out.issues.push_back(
                {file, row.line, "kospi200_item_yn must be \"true\" or \"false\""});
            continue;
        }
        r.competitors = split_codes(cols.get(row, "competitors"));
        r.source_file = file;
        r.source_line = row.line;
        out.records.push_back(std::move(r));
    }
    return out;
}

ParsedRecords<DailyPriceRecord> parse_price_csv(const std::string& text,
                                                const std::string& file) {
    CsvTable table = parse_csv(text);
    ColumnMap cols(table.header,
                   {"stock_code", "date", "open", "close", "high", "low"});
    ParsedRecords<DailyPriceRecord> out;
    for (const auto& row : table.rows) {
        if (!cols.row_usable(row, file, out.issues)) continue;
        DailyPriceRecord r;
        r.stock_code = cols.get(row, "stock_code");
        r.date = cols.get(row, "date");
        bool numbers_ok = parse_double(cols.get(row, "open"), r.open) &&
                          parse_double(cols.get(row, "close"), r.close) &&
                          parse_double(cols.get(row, "high"), r.high) &&
                          parse_double(cols.get(row, "low"), r.low);
        if (!numbers_ok) {
            out.issues.push_back({file, row.line, "price field is not a number"});
            continue;
        }
        r.source_file = file;
        r.source_line = row.line;
        out.records.push_back(std::move(r));
    }
    return out;
}

ParsedRecords<IndicatorRecord> parse_indicator_csv(const std::string& text,
                                                   const std::string& file) {
    CsvTable table = parse_csv(text);
    ColumnMap cols(table.header, {"stock_code", "date", "per", "pbr", "eps"});
    ParsedRecords<IndicatorRecord> out;
    for (const auto& row : table.rows) {
        if (!cols.row_usable(row, file, out.issues)) continue;
        IndicatorRecord r;
        r.stock_code = cols.get(row, "stock_code");
        r.date = cols.get(row, "date");
        bool numbers_ok = true;
        auto metric = [&](const char* name, std::optional<double>& slot) {
            const std::string& field = cols.get(row, name);
            if (field.empty()) return;  // absent metric
            double v;
            if (parse_double(field, v))
                slot = v;
            else
                numbers_ok = false;
        };
        metric("per", r.per);
        metric("pbr", r.pbr);
        metric("eps", r.eps);
        if (!numbers_ok) {
            out.issues.push_back({file, row.line, "indicator field is not a number"});
            continue;
        }
        r.source_file = file;
        r.source_line = row.line;
        out.records.push_back(std::move(r));
    }
    return out;
}

ParsedRecords<FinStatementRecord> parse_statement_jsonl(const std::string& text,
                                                        const std::string& file) {
    ParsedRecords<FinStatementRecord> out;
    int line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string raw = text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (end == std::string::npos && raw.empty()) break;
        start = end == std::string::npos ? text.size() + 1 : end + 1;
        if (raw.empty()) continue;

        nlohmann::json doc = nlohmann::json::parse(raw, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            out.issues.push_back({file, line, "line is not a JSON object"});
            continue;
        }
        FinStatementRecord r;
        if (!doc.contains("stock_code") || !doc["stock_code"].is_string()) {
            out.issues.push_back({file, line, "stock_code is missing or not a string"});
            continue;
        }
        r.stock_code = doc["stock_code"].get<std::string>();
        if (!doc.contains("year") || !doc["year"].is_number_integer()) {
            out.issues.push_back({file, line, "year is missing or not an integer"});
            continue;
        }
        r.year = doc["year"].get<std::int64_t>();
        bool fields_ok = true;
        if (doc.contains("quarter")) {
            if (doc["quarter"].is_number_integer())
                r.quarter = doc["quarter"].get<std::int64_t>();
            else
                fields_ok = false;
        }
        auto metric = [&](const char* key, std::optional<double>& slot) {
            if (!doc.contains(key)) return;
            if (doc[key].is_number())
                slot = doc[key].get<double>();
            else
                fields_ok = false;
        };
        metric("revenue", r.revenue);
        metric("operating_income", r.operating_income);
        metric("net_income", r.net_income);
        metric("total_assets", r.total_assets);
        metric("total_liabilities", r.total_liabilities);
        metric("total_equity", r.total_equity);
        metric("capital_stock", r.capital_stock);
        if (!fields_ok) {
            out.issues.push_back({file, line, "field has the wrong JSON type"});
            continue;
        }
        r.source_file = file;
        r.source_line = line;
        out.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace marketgraph

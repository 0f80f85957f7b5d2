#include "marketgraph/fixture.hpp"

#include <cstdio>
#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "marketgraph/csv.hpp"
#include "marketgraph/errors.hpp"
#include "marketgraph/records.hpp"

namespace marketgraph {

namespace {

std::string two_dp(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

/// Money-style draw on the 2-decimal grid, inclusive bounds in cents.
double cents(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    std::int64_t span = hi - lo + 1;
    return static_cast<double>(lo + static_cast<std::int64_t>(rng() % span)) / 100.0;
}

std::int64_t roll(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % (hi - lo + 1));
}

bool code_ok(const std::string& code) {
    if (code.size() != 6) return false;
    for (char c : code)
        if (!(c >= '0' && c <= '9') && !(c >= 'A' && c <= 'Z')) return false;
    return true;
}

void check_spec(const FixtureSpec& spec) {
    if (spec.companies.empty()) throw BadSpec("spec has no companies");
    if (spec.first_year > spec.last_year)
        throw BadSpec("first_year is after last_year");
    if (spec.first_year < 1900 || spec.last_year > 2999)
        throw BadSpec("year range leaves [1900, 2999]");
    for (const auto& date : spec.price_dates)
        if (!valid_date_text(date)) throw BadSpec("bad price date " + date);
    std::set<std::string> codes;
    for (const auto& c : spec.companies) {
        if (!code_ok(c.code)) throw BadSpec("bad stock code " + c.code);
        if (!codes.insert(c.code).second)
            throw BadSpec("duplicate stock code " + c.code);
        if (!valid_date_text(c.listing_dt))
            throw BadSpec("bad listing date for " + c.code);
        for (const auto& competitor : c.competitors)
            if (!code_ok(competitor))
                throw BadSpec("bad competitor code " + competitor);
        for (const auto& o : c.indicators)
            if (o.year < spec.first_year || o.year > spec.last_year)
                throw BadSpec("indicator override year outside range for " + c.code);
        for (const auto& o : c.statements)
            if (o.year < spec.first_year || o.year > spec.last_year)
                throw BadSpec("statement override year outside range for " + c.code);
    }
}

std::string join_codes(const std::vector<std::string>& codes) {
    std::string out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out += ';';
        out += codes[i];
    }
    return out;
}

}  // namespace

void FixtureFiles::write(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(dir) / name).string();
    };
    write_text_file(path("companies.csv"), companies_csv);
    write_text_file(path("prices.csv"), prices_csv);
    write_text_file(path("indicators.csv"), indicators_csv);
    write_text_file(path("statements.jsonl"), statements_jsonl);
}

FixtureFiles generate_fixture(const FixtureSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    std::mt19937_64 rng(seed);
    FixtureFiles out;

    out.companies_csv =
        "stock_code,stock_nm,stock_abbrv,stock_nm_eng,listing_dt,market_nm,"
        "sector,outstanding_shares,kospi200_item_yn,competitors\n";
    for (const auto& c : spec.companies) {
        out.companies_csv +=
            csv_line({c.code, c.name, c.abbrv, c.name_eng, c.listing_dt, c.market,
                      c.sector, std::to_string(c.outstanding_shares),
                      c.kospi200 ? "true" : "false", join_codes(c.competitors)});
        out.companies_csv += '\n';
    }

    out.prices_csv = "stock_code,date,open,close,high,low\n";
    for (const auto& c : spec.companies) {
        for (const auto& date : spec.price_dates) {
            double open = cents(rng, 100000, 9900000);
            double close = open + cents(rng, -30000, 30000);
            if (close < 1.0) close = 1.0;
            double high = std::max(open, close) + cents(rng, 0, 20000);
            double low = std::min(open, close) - cents(rng, 0, 20000);
            if (low < 0.0) low = 0.0;
            out.prices_csv += csv_line({c.code, date, two_dp(open), two_dp(close),
                                        two_dp(high), two_dp(low)});
            out.prices_csv += '\n';
        }
    }

    out.indicators_csv = "stock_code,date,per,pbr,eps\n";
    for (const auto& c : spec.companies) {
        for (std::int64_t year = spec.first_year; year <= spec.last_year; ++year) {
            double per, pbr, eps;
            bool overridden = false;
            for (const auto& o : c.indicators) {
                if (o.year != year) continue;
                per = o.per;
                pbr = o.pbr;
                eps = o.eps;
                overridden = true;
                break;
            }
            if (!overridden) {
                per = cents(rng, 200, 2500);
                pbr = cents(rng, 30, 300);
                eps = cents(rng, -50000, 400000);
            }
            std::string date = std::to_string(year) + "0401";
            out.indicators_csv += csv_line({c.code, date, two_dp(per), two_dp(pbr),
                                            two_dp(eps)});
            out.indicators_csv += '\n';
        }
    }

    for (const auto& c : spec.companies) {
        for (std::int64_t year = spec.first_year; year <= spec.last_year; ++year) {
            double revenue, oi, ni;
            bool overridden = false;
            for (const auto& o : c.statements) {
                if (o.year != year) continue;
                revenue = o.revenue;
                oi = o.operating_income;
                ni = o.net_income;
                overridden = true;
                break;
            }
            if (!overridden) {
                std::int64_t revenue_cents = roll(rng, 1000000, 9999999);
                std::int64_t oi_cents = revenue_cents * roll(rng, -10, 25) / 100;
                std::int64_t ni_cents = oi_cents * roll(rng, 60, 110) / 100;
                revenue = static_cast<double>(revenue_cents) / 100.0;
                oi = static_cast<double>(oi_cents) / 100.0;
                ni = static_cast<double>(ni_cents) / 100.0;
            }
            nlohmann::ordered_json doc;
            doc["stock_code"] = c.code;
            doc["year"] = year;
            doc["revenue"] = revenue;
            doc["operating_income"] = oi;
            doc["net_income"] = ni;
            out.statements_jsonl += doc.dump();
            out.statements_jsonl += '\n';
        }
    }

    return out;
}

const FixtureSpec& demo_spec() {
    static const FixtureSpec spec = [] {
        FixtureSpec s;
        s.name = "demo";
        s.first_year = 2023;
        s.last_year = 2025;
        s.price_dates = {"20230306", "20230307"};

        auto company = [](std::string code, std::string name, std::string abbrv,
                          std::string name_eng, std::string listing,
                          std::string market, std::int64_t shares, bool k200,
                          std::vector<std::string> competitors) {
            FixtureCompany c;
            c.code = std::move(code);
            c.name = std::move(name);
            c.abbrv = std::move(abbrv);
            c.name_eng = std::move(name_eng);
            c.listing_dt = std::move(listing);
            c.market = std::move(market);
            c.sector = "Semiconductor";
            c.outstanding_shares = shares;
            c.kospi200 = k200;
            c.competitors = std::move(competitors);
            return c;
        };

        FixtureCompany samsung =
            company("005930", "삼성전자", "Samsung Electronics",
                    "Samsung Electronics Co., Ltd.", "19750611", "KOSPI",
                    5969782550, true, {"000660"});
        samsung.indicators = {{2023, 21.00, 2.30, 4200.00},
                              {2024, 20.50, 2.40, 3900.00},
                              {2025, 22.00, 2.50, 4100.00}};
        samsung.statements = {{2023, 258935.00, 6566.00, 15487.00},
                              {2024, 300870.50, 32725.80, 34451.20},
                              {2025, 289120.00, 28410.50, 30120.70}};

        FixtureCompany skhynix =
            company("000660", "SK하이닉스", "SK Hynix", "SK hynix Inc.",
                    "19961226", "KOSPI", 728002365, true, {"005930"});
        skhynix.indicators = {{2023, 15.00, 1.90, 2100.00},
                              {2024, 14.50, 1.95, 2300.00},
                              {2025, 14.00, 2.00, 2500.00}};
        skhynix.statements = {{2023, 32765.80, -7730.10, -9137.50},
                              {2024, 66192.60, 23461.70, 19797.00},
                              {2025, 74250.30, 31050.40, 32480.60}};

        // the five undervalued names: low per, low pbr, positive eps
        FixtureCompany lumens = company("038060", "Lumens", "Lumens",
                                        "Lumens Co., Ltd.", "20060623", "KOSDAQ",
                                        43830210, false, {});
        lumens.indicators = {{2023, 5.10, 0.52, 310.00},
                             {2024, 5.40, 0.55, 325.00},
                             {2025, 5.20, 0.58, 318.00}};

        FixtureCompany woori = company("153490", "Woori E&L", "Woori E&L",
                                       "Woori E&L Co., Ltd.", "20130702", "KOSDAQ",
                                       61200000, false, {});
        woori.indicators = {{2023, 6.20, 0.61, 150.00},
                            {2024, 6.05, 0.63, 160.00},
                            {2025, 6.30, 0.60, 155.00}};

        FixtureCompany lx = company("108320", "LX Semicon", "LX Semicon",
                                    "LX Semicon Co., Ltd.", "20100611", "KOSDAQ",
                                    16264300, false, {"000990"});
        lx.indicators = {{2023, 6.80, 0.72, 980.00},
                         {2024, 7.10, 0.70, 1010.00},
                         {2025, 6.95, 0.74, 995.00}};

        FixtureCompany oditek = company("080520", "Oditek", "Oditek",
                                        "Oditek Co., Ltd.", "20040707", "KOSDAQ",
                                        13910480, false, {});
        oditek.indicators = {{2023, 5.90, 0.66, 210.00},
                             {2024, 6.10, 0.68, 220.00},
                             {2025, 6.00, 0.65, 215.00}};

        FixtureCompany hmnex = company("036170", "HM Nex", "HM Nex",
                                       "HM Nex Co., Ltd.", "20020124", "KOSDAQ",
                                       28455060, false, {"080520"});
        hmnex.indicators = {{2023, 7.20, 0.75, 440.00},
                            {2024, 7.00, 0.77, 450.00},
                            {2025, 7.30, 0.76, 445.00}};

        // the five growth names: strictly rising eps, moderate per, pbr > 1
        FixtureCompany hanyang =
            company("078350", "Hanyang Digitech", "Hanyang Digitech",
                    "Hanyang Digitech Co., Ltd.", "20050104", "KOSDAQ", 20155000,
                    false, {});
        hanyang.indicators = {{2023, 11.50, 1.40, 500.00},
                              {2024, 11.20, 1.45, 560.00},
                              {2025, 10.90, 1.50, 640.00}};

        FixtureCompany dbhitek = company("000990", "DB Hitek", "DB Hitek",
                                         "DB HiTek Co., Ltd.", "19751212", "KOSPI",
                                         44398025, true, {"108320"});
        dbhitek.indicators = {{2023, 9.80, 1.20, 1500.00},
                              {2024, 9.60, 1.25, 1620.00},
                              {2025, 9.40, 1.30, 1780.00}};

        FixtureCompany ik = company("149010", "IK Semicon", "IK Semicon",
                                    "IK Semicon Co., Ltd.", "20110721", "KOSDAQ",
                                    17250000, false, {});
        ik.indicators = {{2023, 12.30, 1.60, 230.00},
                         {2024, 12.00, 1.62, 255.00},
                         {2025, 11.80, 1.65, 290.00}};

        FixtureCompany duksan =
            company("077360", "Duksan HiMetal", "Duksan HiMetal",
                    "Duksan HiMetal Co., Ltd.", "20050208", "KOSDAQ", 29577350,
                    false, {});
        duksan.indicators = {{2023, 10.40, 1.35, 610.00},
                             {2024, 10.20, 1.38, 650.00},
                             {2025, 10.00, 1.42, 700.00}};

        FixtureCompany iljin = company("020760", "Iljin Display", "Iljin Display",
                                       "Iljin Display Co., Ltd.", "19940622",
                                       "KOSPI", 28686570, false, {});
        iljin.indicators = {{2023, 13.10, 1.70, 120.00},
                            {2024, 12.80, 1.72, 135.00},
                            {2025, 12.50, 1.75, 152.00}};

        s.companies = {samsung, skhynix, lumens,   woori, lx,     oditek,
                       hmnex,   hanyang, dbhitek, ik,    duksan, iljin};
        return s;
    }();
    return spec;
}

FixtureSpec random_spec(std::mt19937_64& rng) {
    FixtureSpec s;
    s.name = "random";
    s.first_year = roll(rng, 2022, 2023);
    s.last_year = roll(rng, 2025, 2026);

    const std::vector<std::string> date_pool = {"20230306", "20230307", "20240105"};
    for (const auto& date : date_pool)
        if (roll(rng, 1, 100) <= 60) s.price_dates.push_back(date);

    auto anchor = [](std::string code, std::string name, std::string abbrv) {
        FixtureCompany c;
        c.code = std::move(code);
        c.abbrv = abbrv;
        c.name = std::move(name);
        c.name_eng = abbrv + " Co., Ltd.";
        c.listing_dt = "19990104";
        c.market = "KOSPI";
        c.sector = "Semiconductor";
        c.outstanding_shares = 1000000;
        c.kospi200 = true;
        return c;
    };
    FixtureCompany samsung =
        anchor("005930", "삼성전자", "Samsung Electronics");
    samsung.competitors = {"000660"};
    FixtureCompany skhynix = anchor("000660", "SK하이닉스", "SK Hynix");
    skhynix.competitors = {"005930"};
    s.companies.push_back(std::move(samsung));
    s.companies.push_back(std::move(skhynix));

    const std::vector<std::string> sectors = {"Semiconductor", "Chemicals",
                                              "Autos", "Banking"};
    std::set<std::string> used_codes = {"005930", "000660"};
    std::int64_t peers = roll(rng, 0, 6);
    for (std::int64_t i = 0; i < peers; ++i) {
        std::string code;
        do {
            code = std::to_string(roll(rng, 100000, 899999));
        } while (!used_codes.insert(code).second);
        FixtureCompany c;
        c.code = code;
        c.name = "Peer " + code;
        c.abbrv = c.name;
        c.name_eng = c.name + " Co., Ltd.";
        c.listing_dt = std::to_string(roll(rng, 1990, 2020)) +
                       (roll(rng, 1, 100) <= 50 ? "0315" : "1102");
        c.market = roll(rng, 1, 100) <= 50 ? "KOSPI" : "KOSDAQ";
        c.sector = roll(rng, 1, 100) <= 60 ? "Semiconductor"
                                           : sectors[rng() % sectors.size()];
        c.outstanding_shares = roll(rng, 100000, 90000000);
        c.kospi200 = roll(rng, 1, 100) <= 30;
        s.companies.push_back(std::move(c));
    }
    // peer competitor listings reference loaded companies only, so count
    // formulas in tests stay closed-form
    for (std::size_t i = 2; i < s.companies.size(); ++i) {
        if (roll(rng, 1, 100) > 30) continue;
        const auto& other =
            s.companies[rng() % s.companies.size()];
        if (other.code != s.companies[i].code)
            s.companies[i].competitors.push_back(other.code);
    }
    return s;
}

}  // namespace marketgraph

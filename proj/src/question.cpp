#include "marketgraph/question.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <set>

#include "marketgraph/records.hpp"

namespace marketgraph {

const char* metric_property(Metric m) {
    switch (m) {
        case Metric::Revenue: return "revenue";
        case Metric::OperatingIncome: return "operating_income";
        case Metric::NetIncome: return "net_income";
    }
    return "";
}

const std::string& default_screen_predicate() {
    static const std::string text = "(ind.per < 10 OR ind.pbr < 1 OR ind.eps > 0)";
    return text;
}

const char* intent_name(const QuestionIntent& intent) {
    if (std::holds_alternative<CompetitorFinancialComparison>(intent))
        return "competitor_financial_comparison";
    if (std::holds_alternative<SectorIndicatorScreen>(intent))
        return "sector_indicator_screen";
    if (std::holds_alternative<PriceLookup>(intent)) return "price_lookup";
    return "unsupported";
}

namespace {

bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool ascii_alnum(char c) { return ascii_digit(c) || ascii_alpha(c); }

std::string lowered(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

/// Word-boundary occurrences of `phrase` in `text`; both must already be
/// lowercase. Boundaries are non-alphanumeric ASCII (multi-byte characters
/// count as boundaries).
std::vector<std::size_t> phrase_positions(const std::string& text,
                                          const std::string& phrase) {
    std::vector<std::size_t> out;
    if (phrase.empty()) return out;
    std::size_t pos = 0;
    while ((pos = text.find(phrase, pos)) != std::string::npos) {
        std::size_t end = pos + phrase.size();
        bool left = pos == 0 || !ascii_alnum(text[pos - 1]);
        bool right = end == text.size() || !ascii_alnum(text[end]);
        if (left && right) out.push_back(pos);
        ++pos;
    }
    return out;
}

bool has_any(const std::string& text,
             std::initializer_list<const char*> phrases) {
    for (const char* p : phrases)
        if (!phrase_positions(text, p).empty()) return true;
    return false;
}

struct Mention {
    std::size_t pos = 0;
    std::size_t end = 0;
    std::string code;
    std::string surface;
};

/// All company mentions by lexicon surface, longest surfaces first so
/// "LX Semicon" is never shadowed by a company named "LX". Overlapping later
/// matches are dropped.
std::vector<Mention> company_mentions(const std::string& low,
                                      const std::string& original,
                                      const Lexicon& lexicon) {
    std::vector<std::pair<std::string, std::string>> surfaces(
        lexicon.company_surfaces.begin(), lexicon.company_surfaces.end());
    std::stable_sort(surfaces.begin(), surfaces.end(),
                     [](const auto& a, const auto& b) {
                         return a.first.size() > b.first.size();
                     });
    std::vector<Mention> out;
    std::vector<char> taken(low.size(), 0);
    for (const auto& [surface, code] : surfaces) {
        for (std::size_t pos : phrase_positions(low, surface)) {
            std::size_t end = pos + surface.size();
            bool overlaps = false;
            for (std::size_t i = pos; i < end && !overlaps; ++i)
                overlaps = taken[i] != 0;
            if (overlaps) continue;
            for (std::size_t i = pos; i < end; ++i) taken[i] = 1;
            out.push_back({pos, end, code, original.substr(pos, surface.size())});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Mention& a, const Mention& b) { return a.pos < b.pos; });
    return out;
}

/// Applies `(stock code: XXXXXX)` spans: each span overrides the name
/// mention it annotates (the one ending just before the parenthesis) or
/// stands alone as a mention of its own.
void apply_code_spans(const std::string& low, const std::string& original,
                      std::vector<Mention>& mentions) {
    const std::string marker = "(stock code:";
    std::size_t pos = 0;
    while ((pos = low.find(marker, pos)) != std::string::npos) {
        std::size_t i = pos + marker.size();
        while (i < original.size() && original[i] == ' ') ++i;
        std::string code;
        while (i < original.size() && code.size() < 6 &&
               (ascii_digit(original[i]) ||
                (original[i] >= 'A' && original[i] <= 'Z'))) {
            code += original[i];
            ++i;
        }
        while (i < original.size() && original[i] == ' ') ++i;
        if (code.size() != 6 || i >= original.size() || original[i] != ')') {
            ++pos;
            continue;
        }
        std::size_t span_end = i + 1;

        Mention* annotated = nullptr;
        for (Mention& m : mentions) {
            if (m.end > pos) continue;
            bool whitespace_gap = true;
            for (std::size_t k = m.end; k < pos; ++k)
                whitespace_gap = whitespace_gap && (original[k] == ' ');
            if (!whitespace_gap) continue;
            if (!annotated || m.end > annotated->end) annotated = &m;
        }
        if (annotated) {
            annotated->code = code;  // explicit code wins over the name match
        } else {
            mentions.push_back(
                {pos, span_end, code, original.substr(pos, span_end - pos)});
        }
        pos = span_end;
    }
    std::sort(mentions.begin(), mentions.end(),
              [](const Mention& a, const Mention& b) { return a.pos < b.pos; });
}

struct NumberScan {
    std::vector<std::int64_t> years;  // ascending, deduplicated
    std::vector<std::string> dates;   // YYYYMMDD, in question order
};

NumberScan scan_numbers(const std::string& text) {
    NumberScan out;
    std::set<std::int64_t> years;
    std::set<std::string> seen_dates;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!ascii_digit(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && ascii_digit(text[j])) ++j;
        std::size_t len = j - i;
        bool left = i == 0 || !ascii_alpha(text[i - 1]);
        bool right = j == text.size() || !ascii_alpha(text[j]);
        std::string run = text.substr(i, len);

        // YYYY-MM-DD spelled with dashes
        if (len == 4 && j + 5 < text.size() && text[j] == '-' &&
            ascii_digit(text[j + 1]) && ascii_digit(text[j + 2]) &&
            text[j + 3] == '-' && ascii_digit(text[j + 4]) &&
            ascii_digit(text[j + 5]) &&
            (j + 6 == text.size() || !ascii_alnum(text[j + 6]))) {
            std::string compact = run + text.substr(j + 1, 2) + text.substr(j + 4, 2);
            if (valid_date_text(compact)) {
                if (seen_dates.insert(compact).second) out.dates.push_back(compact);
                i = j + 6;
                continue;
            }
        }
        if (left && right && len == 8 && valid_date_text(run)) {
            if (seen_dates.insert(run).second) out.dates.push_back(run);
        } else if (left && right && len == 4) {
            std::int64_t y = std::stoll(run);
            if (y >= 1900 && y <= 2999) years.insert(y);
        }
        i = j;
    }
    out.years.assign(years.begin(), years.end());
    return out;
}

std::vector<Metric> scan_metrics(const std::string& low) {
    std::vector<Metric> out;
    if (has_any(low, {"revenue", "revenues"})) out.push_back(Metric::Revenue);
    if (has_any(low, {"operating income"})) out.push_back(Metric::OperatingIncome);
    if (has_any(low, {"net income"})) out.push_back(Metric::NetIncome);
    return out;
}

std::string text_prop(const Node& n, const char* name) {
    auto it = n.props.find(name);
    if (it == n.props.end() || it->second.kind() != Value::Kind::Text) return "";
    return it->second.as_text();
}

}  // namespace

Lexicon build_lexicon(const PropertyGraph& g) {
    Lexicon lex;
    for (const auto& [id, node] : g.nodes()) {
        if (node.labels.count("Company")) {
            std::string code = text_prop(node, "stock_code");
            if (code.empty()) continue;
            lex.companies[code] = {code, text_prop(node, "stock_abbrv")};
            for (const char* prop :
                 {"stock_code", "stock_nm", "stock_abbrv", "stock_nm_eng"}) {
                std::string surface = text_prop(node, prop);
                if (surface.empty()) continue;
                lex.company_surfaces.emplace(lowered(surface), code);
            }
        } else if (node.labels.count("Sector")) {
            std::string name = text_prop(node, "stock_sector_nm");
            if (!name.empty()) lex.sector_surfaces.emplace(lowered(name), name);
        }
    }
    return lex;
}

QuestionIntent classify_and_extract(const std::string& question,
                                    const Lexicon& lexicon) {
    const std::string low = lowered(question);

    if (has_any(low, {"tomorrow", "predict", "predicted", "prediction",
                      "forecast", "next week", "next month"}))
        return Unsupported{"prediction is not supported"};

    std::vector<Mention> mentions = company_mentions(low, question, lexicon);
    apply_code_spans(low, question, mentions);
    std::vector<CompanyRef> companies;
    std::set<std::string> seen_codes;
    for (const Mention& m : mentions) {
        if (!seen_codes.insert(m.code).second) continue;
        CompanyRef ref;
        ref.code = m.code;
        ref.name = m.surface;
        companies.push_back(std::move(ref));
    }

    std::vector<SectorRef> sectors;
    {
        std::vector<std::pair<std::size_t, std::string>> hits;
        for (const auto& [surface, name] : lexicon.sector_surfaces)
            for (std::size_t pos : phrase_positions(low, surface))
                hits.emplace_back(pos, name);
        std::sort(hits.begin(), hits.end());
        std::set<std::string> seen;
        for (const auto& [pos, name] : hits)
            if (seen.insert(name).second) sectors.push_back({name, {}});
    }

    NumberScan numbers = scan_numbers(question);
    std::vector<Metric> metrics = scan_metrics(low);

    bool comparison_cue =
        has_any(low, {"compare", "comparing", "comparison", "compared",
                      "competitor", "competitors", "performance trends",
                      "versus", "vs"});
    if (comparison_cue && !metrics.empty()) {
        if (companies.empty())
            return Unsupported{"the question names no known company"};
        if (numbers.years.empty())
            return Unsupported{"the question gives no years"};
        CompetitorFinancialComparison intent;
        intent.anchor = companies.front();
        intent.competitors.assign(companies.begin() + 1, companies.end());
        intent.years = numbers.years;
        intent.metrics = metrics;
        return intent;
    }

    bool sector_cue = has_any(low, {"same industry", "same sector", "sector",
                                    "undervalued", "growth potential"});
    bool indicator_term =
        has_any(low, {"per", "pbr", "eps", "price-to-earnings",
                      "price-to-book", "earnings per share"});
    if (sector_cue && indicator_term) {
        SectorIndicatorScreen intent;
        if (!companies.empty())
            intent.anchor = companies.front();
        else if (!sectors.empty())
            intent.anchor = sectors.front();
        else
            return Unsupported{"the question names no known company or sector"};
        if (numbers.years.empty())
            return Unsupported{"the question gives no years"};
        intent.years = numbers.years;
        intent.predicate = default_screen_predicate();
        return intent;
    }

    bool price_cue = has_any(
        low, {"price", "prices", "stock price", "quote", "traded", "trading"});
    if (!companies.empty() && numbers.dates.size() == 1 && price_cue)
        return PriceLookup{companies.front(), numbers.dates.front()};

    return Unsupported{"the question matches no supported pattern"};
}

}  // namespace marketgraph

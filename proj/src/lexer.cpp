#include "marketgraph/lexer.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace marketgraph {

const char* token_name(Tok t) {
    switch (t) {
        case Tok::KwMatch: return "MATCH";
        case Tok::KwOptional: return "OPTIONAL";
        case Tok::KwWhere: return "WHERE";
        case Tok::KwWith: return "WITH";
        case Tok::KwReturn: return "RETURN";
        case Tok::KwOrder: return "ORDER";
        case Tok::KwBy: return "BY";
        case Tok::KwAs: return "AS";
        case Tok::KwAnd: return "AND";
        case Tok::KwOr: return "OR";
        case Tok::KwNot: return "NOT";
        case Tok::KwIn: return "IN";
        case Tok::KwAsc: return "ASC";
        case Tok::KwDesc: return "DESC";
        case Tok::KwTrue: return "TRUE";
        case Tok::KwFalse: return "FALSE";
        case Tok::KwNull: return "NULL";
        case Tok::Ident: return "identifier";
        case Tok::Str: return "string";
        case Tok::Int: return "integer";
        case Tok::Float: return "float";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Colon: return "':'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Pipe: return "'|'";
        case Tok::Minus: return "'-'";
        case Tok::Gt: return "'>'";
        case Tok::Lt: return "'<'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'<>'";
        case Tok::Le: return "'<='";
        case Tok::Ge: return "'>='";
        case Tok::End: return "end of input";
    }
    return "?";
}

namespace {

const std::map<std::string, Tok>& keywords() {
    static const std::map<std::string, Tok> kw = {
        {"MATCH", Tok::KwMatch},   {"OPTIONAL", Tok::KwOptional},
        {"WHERE", Tok::KwWhere},   {"WITH", Tok::KwWith},
        {"RETURN", Tok::KwReturn}, {"ORDER", Tok::KwOrder},
        {"BY", Tok::KwBy},         {"AS", Tok::KwAs},
        {"AND", Tok::KwAnd},       {"OR", Tok::KwOr},
        {"NOT", Tok::KwNot},       {"IN", Tok::KwIn},
        {"ASC", Tok::KwAsc},       {"DESC", Tok::KwDesc},
        {"TRUE", Tok::KwTrue},     {"FALSE", Tok::KwFalse},
        {"NULL", Tok::KwNull},
    };
    return kw;
}

struct Scanner {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    bool done() const { return i >= s.size(); }
    char peek(std::size_t ahead = 0) const {
        return i + ahead < s.size() ? s[i + ahead] : '\0';
    }
    char take() {
        char c = s[i++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    SourcePos pos() const { return {line, col}; }
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    Scanner sc{text};
    while (!sc.done()) {
        char c = sc.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            sc.take();
            continue;
        }
        SourcePos pos = sc.pos();
        if (ident_start(c)) {
            std::string word;
            while (!sc.done() && ident_cont(sc.peek())) word.push_back(sc.take());
            std::string upper = word;
            for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            auto kw = keywords().find(upper);
            if (kw != keywords().end()) {
                out.push_back({kw->second, std::move(word), 0, 0.0, pos});
            } else {
                out.push_back({Tok::Ident, std::move(word), 0, 0.0, pos});
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            bool is_float = false;
            while (!sc.done() && std::isdigit(static_cast<unsigned char>(sc.peek())))
                digits.push_back(sc.take());
            if (sc.peek() == '.' && std::isdigit(static_cast<unsigned char>(sc.peek(1)))) {
                is_float = true;
                digits.push_back(sc.take());  // '.'
                while (!sc.done() && std::isdigit(static_cast<unsigned char>(sc.peek())))
                    digits.push_back(sc.take());
            }
            if (sc.peek() == 'e' || sc.peek() == 'E') {
                char after = sc.peek(1);
                char after2 = sc.peek(2);
                bool exp_digits =
                    std::isdigit(static_cast<unsigned char>(after)) ||
                    ((after == '+' || after == '-') &&
                     std::isdigit(static_cast<unsigned char>(after2)));
                if (exp_digits) {
                    is_float = true;
                    digits.push_back(sc.take());  // e
                    if (sc.peek() == '+' || sc.peek() == '-') digits.push_back(sc.take());
                    while (!sc.done() && std::isdigit(static_cast<unsigned char>(sc.peek())))
                        digits.push_back(sc.take());
                }
            }
            Token t;
            t.pos = pos;
            t.text = digits;
            if (is_float) {
                t.kind = Tok::Float;
                t.float_value = std::stod(digits);
            } else {
                t.kind = Tok::Int;
                std::int64_t v = 0;
                auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
                if (ec != std::errc()) throw LexError(pos, "integer literal out of range: " + digits);
                t.int_value = v;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            sc.take();
            std::string decoded;
            bool closed = false;
            while (!sc.done()) {
                char d = sc.take();
                if (d == '"') {
                    closed = true;
                    break;
                }
                if (d == '\\') {
                    if (sc.done()) break;
                    char e = sc.take();
                    switch (e) {
                        case '"': decoded.push_back('"'); break;
                        case '\\': decoded.push_back('\\'); break;
                        case 'n': decoded.push_back('\n'); break;
                        case 't': decoded.push_back('\t'); break;
                        case 'r': decoded.push_back('\r'); break;
                        default:
                            throw LexError(pos, std::string("unknown escape \\") + e);
                    }
                    continue;
                }
                decoded.push_back(d);
            }
            if (!closed) throw LexError(pos, "unterminated string literal");
            out.push_back({Tok::Str, std::move(decoded), 0, 0.0, pos});
            continue;
        }
        sc.take();
        auto push = [&](Tok k) { out.push_back({k, {}, 0, 0.0, pos}); };
        switch (c) {
            case '(': push(Tok::LParen); break;
            case ')': push(Tok::RParen); break;
            case '[': push(Tok::LBracket); break;
            case ']': push(Tok::RBracket); break;
            case '{': push(Tok::LBrace); break;
            case '}': push(Tok::RBrace); break;
            case ':': push(Tok::Colon); break;
            case ',': push(Tok::Comma); break;
            case '.': push(Tok::Dot); break;
            case '|': push(Tok::Pipe); break;
            case '-': push(Tok::Minus); break;
            case '=': push(Tok::Eq); break;
            case '>':
                if (sc.peek() == '=') {
                    sc.take();
                    push(Tok::Ge);
                } else {
                    push(Tok::Gt);
                }
                break;
            case '<':
                if (sc.peek() == '>') {
                    sc.take();
                    push(Tok::Ne);
                } else if (sc.peek() == '=') {
                    sc.take();
                    push(Tok::Le);
                } else {
                    push(Tok::Lt);
                }
                break;
            default: {
                std::string snippet(1, c);
                throw LexError(pos, "illegal character '" + snippet + "'");
            }
        }
    }
    out.push_back({Tok::End, {}, 0, 0.0, sc.pos()});
    return out;
}

}  // namespace marketgraph

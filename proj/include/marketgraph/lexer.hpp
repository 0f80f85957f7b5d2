#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marketgraph/errors.hpp"

namespace marketgraph {

enum class Tok {
    KwMatch, KwOptional, KwWhere, KwWith, KwReturn, KwOrder, KwBy, KwAs,
    KwAnd, KwOr, KwNot, KwIn, KwAsc, KwDesc, KwTrue, KwFalse, KwNull,
    Ident, Str, Int, Float,
    LParen, RParen, LBracket, RBracket, LBrace, RBrace,
    Colon, Comma, Dot, Pipe, Minus, Gt, Lt, Eq, Ne, Le, Ge,
    End
};

const char* token_name(Tok t);

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier name or decoded string literal
    std::int64_t int_value = 0;
    double float_value = 0.0;
    SourcePos pos;
};

/// Keywords are case-insensitive, identifiers case-sensitive. String literals
/// are double-quoted with \" \\ \n \t \r escapes. Throws LexError on illegal
/// characters or an unterminated string. The result ends with a Tok::End.
std::vector<Token> tokenize(const std::string& text);

}  // namespace marketgraph

#include "ottdb/sql.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace ottdb::sql {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "SELECT", "FROM", "JOIN", "ON", "WHERE", "AND", "GROUP", "BY", "ORDER", "ASC", "DESC", "AS", "COUNT", "SUM",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_part(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string at(const SourcePos& pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            const SourcePos start = pos();
            const std::size_t begin = i_;
            Token tok;
            tok.pos = start;
            if (ident_start(c)) {
                while (i_ < text_.size() && ident_part(text_[i_])) advance();
                std::string word(text_.substr(begin, i_ - begin));
                std::string up = upper(word);
                if (is_keyword(up)) {
                    tok.kind = TokenKind::Keyword;
                    tok.text = std::move(up);
                } else {
                    tok.kind = TokenKind::Identifier;
                    tok.text = std::move(word);
                }
            } else if (digit(c)) {
                while (i_ < text_.size() && digit(text_[i_])) advance();
                if (i_ + 1 < text_.size() && text_[i_] == '.' && digit(text_[i_ + 1])) {
                    advance();
                    while (i_ < text_.size() && digit(text_[i_])) advance();
                }
                tok.kind = TokenKind::NumberLiteral;
                tok.text = std::string(text_.substr(begin, i_ - begin));
            } else if (c == '`') {
                advance();
                while (i_ < text_.size() && text_[i_] != '`') advance();
                if (i_ >= text_.size()) {
                    throw Error(ErrorCode::UnterminatedQuotedIdentifier, at(start) + ": unterminated quoted identifier", start);
                }
                tok.kind = TokenKind::QuotedIdentifier;
                tok.text = std::string(text_.substr(begin + 1, i_ - begin - 1));
                advance();
            } else if (c == '\'') {
                advance();
                std::string value;
                bool closed = false;
                while (i_ < text_.size()) {
                    if (text_[i_] == '\'') {
                        if (i_ + 1 < text_.size() && text_[i_ + 1] == '\'') {
                            value += '\'';
                            advance();
                            advance();
                            continue;
                        }
                        advance();
                        closed = true;
                        break;
                    }
                    value += text_[i_];
                    advance();
                }
                if (!closed) throw Error(ErrorCode::UnterminatedString, at(start) + ": unterminated string literal", start);
                tok.kind = TokenKind::StringLiteral;
                tok.text = std::move(value);
            } else {
                tok.kind = TokenKind::Symbol;
                const char next = i_ + 1 < text_.size() ? text_[i_ + 1] : '\0';
                if (c == '<' && (next == '=' || next == '>')) {
                    advance();
                    advance();
                } else if (c == '>' && next == '=') {
                    advance();
                    advance();
                } else if (std::string_view(",.()=<>;").find(c) != std::string_view::npos) {
                    advance();
                } else {
                    throw Error(ErrorCode::UnknownCharacter,
                                at(start) + ": unexpected character '" + std::string(1, c) + "'", start);
                }
                tok.text = std::string(text_.substr(begin, i_ - begin));
            }
            tok.length = i_ - begin;
            out.push_back(std::move(tok));
        }
        return out;
    }

private:
    SourcePos pos() const { return SourcePos{line_, column_, i_}; }

    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++i_;
    }

    std::string_view text_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Identifier: return "Identifier";
        case TokenKind::QuotedIdentifier: return "QuotedIdentifier";
        case TokenKind::StringLiteral: return "StringLiteral";
        case TokenKind::NumberLiteral: return "NumberLiteral";
        case TokenKind::Symbol: return "Symbol";
    }
    return "?";
}

bool is_keyword(std::string_view upper_word) {
    return std::find(kKeywords.begin(), kKeywords.end(), upper_word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace ottdb::sql

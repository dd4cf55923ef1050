#pragma once

#include "ottdb/catalog.hpp"
#include "ottdb/error.hpp"
#include "ottdb/value.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ottdb::sql {

enum class TokenKind { Keyword, Identifier, QuotedIdentifier, StringLiteral, NumberLiteral, Symbol };

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Symbol;
    /// Keywords are upper-cased; quoted identifiers and strings exclude their quotes.
    std::string text;
    SourcePos pos;
    /// Bytes of source covered, quotes included.
    std::size_t length = 0;

    bool is_keyword(std::string_view kw) const { return kind == TokenKind::Keyword && text == kw; }
    bool is_symbol(std::string_view sym) const { return kind == TokenKind::Symbol && text == sym; }
};

/// Throws UnterminatedString, UnterminatedQuotedIdentifier, UnknownCharacter.
std::vector<Token> tokenize(std::string_view text);

bool is_keyword(std::string_view upper_word);

struct Identifier {
    std::string name;
    bool quoted = false;
    SourcePos pos;
};

struct ColumnRef {
    std::optional<Identifier> qualifier;
    Identifier column;

    /// "b.`Release year`"
    std::string to_sql() const;
};

enum class AggregateFunc { Count, Sum };

std::string_view to_string(AggregateFunc func);

struct Aggregate {
    AggregateFunc func = AggregateFunc::Count;
    ColumnRef arg;
    SourcePos pos;
};

using Expr = std::variant<ColumnRef, Aggregate>;

/// Result header for an unaliased select expression: the bare column name as
/// written, or "COUNT(Actor_id)" for aggregates.
std::string display_name(const Expr& expr);
std::string expr_to_sql(const Expr& expr);

struct SelectItem {
    Expr expr;
    std::optional<std::string> alias;
};

struct TableRef {
    Identifier table;
    std::optional<Identifier> alias;
};

struct JoinClause {
    TableRef table;
    ColumnRef left;
    ColumnRef right;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);
bool evaluate(CompareOp op, std::strong_ordering cmp);

struct Literal {
    Value value;
    std::string text;
    SourcePos pos;
};

struct Predicate {
    ColumnRef lhs;
    CompareOp op = CompareOp::Eq;
    std::variant<Literal, ColumnRef> rhs;
};

struct OrderItem {
    Expr expr;
    bool descending = false;
};

struct QueryAst {
    std::vector<SelectItem> select_items;
    TableRef from;
    std::vector<JoinClause> joins;
    std::vector<Predicate> where;
    std::vector<ColumnRef> group_by;
    std::vector<OrderItem> order_by;
};

/// stmt := SELECT items FROM tableref join* where? groupby? orderby? ';'?
/// Throws UnexpectedToken, TrailingInput, InvalidLiteral.
QueryAst parse(std::span<const Token> tokens);
QueryAst parse(std::string_view text);

/// Stable indented rendering used by --parse-only and golden tests.
std::string to_debug_string(const QueryAst& ast);

/// CREATE TABLE name ( col TYPE, ..., PRIMARY KEY (..), FOREIGN KEY (..) REFERENCES t (..) )
/// Types: INT, DECIMAL, TEXT, BOOL. Used by admin sessions.
TableDef parse_create_table(std::string_view text);

}  // namespace ottdb::sql

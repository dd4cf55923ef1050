#pragma once

#include "ottdb/catalog.hpp"
#include "ottdb/sql.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ottdb {

/// One FROM/JOIN table. Joined rows concatenate the scope's columns in order,
/// so `offset` is where this entry's columns start.
struct ScopeEntry {
    std::size_t table = 0;
    std::string table_name;
    std::string alias;
    std::size_t offset = 0;
    std::size_t width = 0;
};

struct BoundColumn {
    std::size_t scope = 0;
    std::size_t column = 0;
    /// Position in the concatenated row.
    std::size_t slot = 0;
    ColumnType type = ColumnType::Int;
    /// "a.`Show Name`"
    std::string name;

    bool same_column(const BoundColumn& other) const { return scope == other.scope && column == other.column; }
};

enum class ExprKind { Column, Count, Sum };

struct BoundExpr {
    ExprKind kind = ExprKind::Column;
    BoundColumn column;
    ColumnType result_type = ColumnType::Int;

    bool is_aggregate() const { return kind != ExprKind::Column; }
    bool same_expr(const BoundExpr& other) const { return kind == other.kind && column.same_column(other.column); }
    std::string to_string() const;
};

struct BoundSelectItem {
    BoundExpr expr;
    std::string header;
};

/// `left` belongs to an earlier scope entry, `right` to the table being joined.
struct BoundJoin {
    BoundColumn left;
    BoundColumn right;
};

struct BoundPredicate {
    BoundColumn lhs;
    sql::CompareOp op = sql::CompareOp::Eq;
    std::variant<Value, BoundColumn> rhs;

    std::string to_string() const;
};

struct BoundOrderItem {
    BoundExpr expr;
    bool descending = false;
};

struct BoundQuery {
    std::vector<ScopeEntry> scope;
    std::vector<BoundSelectItem> select;
    std::vector<BoundJoin> joins;
    std::vector<BoundPredicate> where;
    std::vector<BoundColumn> group_by;
    std::vector<BoundOrderItem> order_by;
    /// GROUP BY present or any aggregate used.
    bool grouped = false;
    std::size_t width = 0;

    std::vector<std::string> headers() const;
};

/// Resolves names against the catalog. Unquoted identifiers match
/// case-insensitively; quoted ones match exactly, falling back to a
/// case-insensitive match when nothing matches exactly.
/// Throws UnknownTable, UnknownColumn, AmbiguousColumn, UngroupedColumn,
/// DuplicateAlias, UnsupportedJoin, TypeMismatch.
BoundQuery bind(const sql::QueryAst& ast, const Database& db);

/// tokenize + parse + bind
BoundQuery bind(std::string_view text, const Database& db);

/// Table lookup with the identifier rules above.
std::optional<std::size_t> resolve_table(const Database& db, std::string_view name, bool quoted);

}  // namespace ottdb

#pragma once

#include "ottdb/error.hpp"
#include "ottdb/storage.hpp"
#include "ottdb/value.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ottdb {

struct ColumnDef {
    std::string name;
    ColumnType type = ColumnType::Int;
};

struct ForeignKey {
    std::vector<std::string> local_columns;
    std::string foreign_table;
    std::vector<std::string> foreign_columns;

    /// e.g. "(Platform_id, Show_id) -> Subscriptions"
    std::string describe() const;
};

/// Row-level check: exactly one of the listed Bool columns is true.
struct ExactlyOneTrue {
    std::vector<std::string> columns;
};

struct TableDef {
    std::string name;
    std::vector<ColumnDef> columns;
    std::vector<std::string> primary_key;
    std::vector<ForeignKey> foreign_keys;
    std::vector<ExactlyOneTrue> checks;

    std::optional<std::size_t> column_index(std::string_view column) const;
};

/// A foreign key with column positions resolved. local_columns is ordered
/// like the referenced table's primary key so it can probe the pk index directly.
struct ResolvedForeignKey {
    std::size_t def_index = 0;
    std::size_t foreign_table = 0;
    std::vector<std::size_t> local_columns;
};

struct Table {
    TableDef def;
    RowStore store;
    std::vector<std::size_t> pk_columns;
    std::vector<ResolvedForeignKey> foreign_keys;
    std::vector<std::vector<std::size_t>> checks;
};

/// One failed constraint. `row_key` renders the offending row's primary key.
struct Violation {
    ErrorCode code = ErrorCode::SchemaError;
    std::string table;
    std::string row_key;
    std::string constraint;
    std::string detail;

    std::string message() const;
};

class Database {
public:
    Database() = default;

    /// Validates the definition against the existing tables and adds it.
    /// Throws SchemaError.
    void add_table(TableDef def);

    std::size_t table_count() const { return tables_.size(); }
    std::span<const Table> tables() const { return tables_; }

    std::optional<std::size_t> table_index(std::string_view name) const;
    const Table* find_table(std::string_view name) const;
    const Table& table(std::string_view name) const;  // throws UnknownTable
    Table& table(std::string_view name);
    const Table& table_at(std::size_t index) const { return tables_[index]; }
    Table& table_at(std::size_t index) { return tables_[index]; }

    /// Appends without running validate_row. Arity and key uniqueness are still
    /// enforced since the store cannot represent their violation.
    std::size_t insert_unchecked(std::string_view table, Row row);

    /// Tables ordered so that every referenced table precedes its referrers.
    std::vector<std::size_t> load_order() const;

    std::size_t total_rows() const;

private:
    std::vector<Table> tables_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

/// The OTT catalog: 26 empty tables.
Database builtin_schema();

/// Checks arity, types, row checks, key uniqueness and foreign keys, in that order.
/// With `replacing`, a row whose key is already present is accepted (updates).
std::optional<Violation> validate_row(const Database& db, std::string_view table, const Row& row, bool replacing = false);

/// Full recount of every key and reference; empty when the database is consistent.
std::vector<Violation> check_integrity(const Database& db);

/// Sorted DDL-like listing, one block per table.
std::string schema_dump(const Database& db);

/// Backtick-quotes names that are not plain identifiers.
std::string quote_identifier(std::string_view name);

std::string render_key(const TableDef& def, const std::vector<std::size_t>& pk_columns, const Row& row);

}  // namespace ottdb

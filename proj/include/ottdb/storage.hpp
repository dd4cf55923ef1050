#pragma once

#include "ottdb/value.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ottdb {

class Database;

/// Equality index over a fixed column set: value tuple -> row positions in insertion order.
struct SecondaryIndex {
    std::vector<std::size_t> columns;
    std::unordered_map<Row, std::vector<std::size_t>, RowHash, RowEq> entries;

    std::span<const std::size_t> lookup(const Row& key) const;
};

/// Insertion-ordered rows with a primary-key index and optional secondary indexes.
/// Schema checks live in the catalog; the store only guarantees key uniqueness.
class RowStore {
public:
    RowStore() = default;
    explicit RowStore(std::vector<std::size_t> pk_columns);

    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const Row& row(std::size_t pos) const { return rows_[pos]; }
    std::span<const Row> rows() const { return rows_; }
    const std::vector<std::size_t>& pk_columns() const { return pk_columns_; }

    Row key_of(const Row& row) const;
    std::optional<std::size_t> find_key(const Row& key) const;
    bool contains_key(const Row& key) const { return find_key(key).has_value(); }

    /// Appends a row whose key is not yet present; returns its position.
    std::size_t append(Row row);

    /// Drops every row at position >= n.
    void truncate(std::size_t n);

    void erase(std::size_t pos);

    /// Replaces the row at pos; the primary key must not change.
    void replace(std::size_t pos, Row row);

    const SecondaryIndex& ensure_index(const std::vector<std::size_t>& columns);
    const SecondaryIndex* find_index(const std::vector<std::size_t>& columns) const;
    const std::map<std::vector<std::size_t>, SecondaryIndex>& indexes() const { return secondary_; }

    /// Recomputes every index from the rows.
    void rebuild_indexes();

private:
    void index_row(std::size_t pos);

    std::vector<std::size_t> pk_columns_;
    std::vector<Row> rows_;
    std::unordered_map<Row, std::size_t, RowHash, RowEq> pk_index_;
    std::map<std::vector<std::size_t>, SecondaryIndex> secondary_;
};

/// Read handle returned by build_index. Stays valid until the table is dropped.
class IndexHandle {
public:
    IndexHandle(const RowStore& store, const SecondaryIndex& index) : store_(&store), index_(&index) {}

    const std::vector<std::size_t>& columns() const { return index_->columns; }
    std::span<const std::size_t> positions(const Row& key) const { return index_->lookup(key); }
    std::vector<Row> lookup(const Row& key) const;

private:
    const RowStore* store_;
    const SecondaryIndex* index_;
};

/// Validates then appends. Throws Error carrying the validate_row verdict.
std::size_t insert(Database& db, std::string_view table, Row row);

/// Rows in insertion order. Throws UnknownTable.
std::span<const Row> scan(const Database& db, std::string_view table);

/// Removes the row with this primary key. Throws NoSuchRow, or
/// RestrictViolation while another row references it.
void delete_row(Database& db, std::string_view table, const Row& key);

/// Replaces the row sharing `row`'s primary key after validating it. Throws NoSuchRow.
void update_row(Database& db, std::string_view table, Row row);

IndexHandle build_index(Database& db, std::string_view table, const std::vector<std::string>& columns);

/// Loads one CSV into a table, all or nothing. Errors carry the 1-based source line.
std::size_t load_csv(Database& db, std::string_view table, std::istream& in);

void dump_csv(const Database& db, std::string_view table, std::ostream& out);
std::string dump_csv(const Database& db, std::string_view table);

/// `<table name with '/' and ' ' replaced by '_'>.csv`
std::string csv_file_name(std::string_view table);

/// Loads every table listed in `<dir>/manifest.txt`, in order. Returns rows loaded per table.
std::vector<std::pair<std::string, std::size_t>> load_dataset(Database& db, const std::string& dir);

/// Writes manifest.txt plus one CSV per table (parents before children).
void save_dataset(const Database& db, const std::string& dir);

}  // namespace ottdb

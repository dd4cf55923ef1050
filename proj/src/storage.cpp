#include "ottdb/storage.hpp"

#include "ottdb/catalog.hpp"
#include "ottdb/csv.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ottdb {

std::span<const std::size_t> SecondaryIndex::lookup(const Row& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) return {};
    return it->second;
}

RowStore::RowStore(std::vector<std::size_t> pk_columns) : pk_columns_(std::move(pk_columns)) {}

Row RowStore::key_of(const Row& row) const {
    Row key;
    key.reserve(pk_columns_.size());
    for (auto c : pk_columns_) key.push_back(row[c]);
    return key;
}

std::optional<std::size_t> RowStore::find_key(const Row& key) const {
    auto it = pk_index_.find(key);
    if (it == pk_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t RowStore::append(Row row) {
    const std::size_t pos = rows_.size();
    rows_.push_back(std::move(row));
    index_row(pos);
    return pos;
}

void RowStore::index_row(std::size_t pos) {
    const Row& row = rows_[pos];
    pk_index_.emplace(key_of(row), pos);
    for (auto& [cols, index] : secondary_) {
        Row key;
        key.reserve(cols.size());
        for (auto c : cols) key.push_back(row[c]);
        index.entries[std::move(key)].push_back(pos);
    }
}

void RowStore::truncate(std::size_t n) {
    while (rows_.size() > n) {
        const std::size_t pos = rows_.size() - 1;
        const Row& row = rows_[pos];
        pk_index_.erase(key_of(row));
        for (auto& [cols, index] : secondary_) {
            Row key;
            for (auto c : cols) key.push_back(row[c]);
            auto it = index.entries.find(key);
            // positions are appended in order, so the last row is at the back
            it->second.pop_back();
            if (it->second.empty()) index.entries.erase(it);
        }
        rows_.pop_back();
    }
}

void RowStore::erase(std::size_t pos) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(pos));
    rebuild_indexes();
}

void RowStore::replace(std::size_t pos, Row row) {
    rows_[pos] = std::move(row);
    rebuild_indexes();
}

void RowStore::rebuild_indexes() {
    pk_index_.clear();
    for (auto& [cols, index] : secondary_) index.entries.clear();
    for (std::size_t pos = 0; pos < rows_.size(); ++pos) index_row(pos);
}

const SecondaryIndex& RowStore::ensure_index(const std::vector<std::size_t>& columns) {
    auto it = secondary_.find(columns);
    if (it != secondary_.end()) return it->second;
    SecondaryIndex& index = secondary_[columns];
    index.columns = columns;
    for (std::size_t pos = 0; pos < rows_.size(); ++pos) {
        Row key;
        for (auto c : columns) key.push_back(rows_[pos][c]);
        index.entries[std::move(key)].push_back(pos);
    }
    return index;
}

const SecondaryIndex* RowStore::find_index(const std::vector<std::size_t>& columns) const {
    auto it = secondary_.find(columns);
    return it == secondary_.end() ? nullptr : &it->second;
}

std::vector<Row> IndexHandle::lookup(const Row& key) const {
    std::vector<Row> out;
    for (auto pos : index_->lookup(key)) out.push_back(store_->row(pos));
    return out;
}

std::size_t insert(Database& db, std::string_view table, Row row) {
    if (auto v = validate_row(db, table, row)) throw Error(v->code, v->message());
    return db.table(table).store.append(std::move(row));
}

std::span<const Row> scan(const Database& db, std::string_view table) { return db.table(table).store.rows(); }

void delete_row(Database& db, std::string_view table, const Row& key) {
    Table& t = db.table(table);
    auto pos = t.store.find_key(key);
    if (!pos) {
        std::string rendered;
        for (const auto& v : key) rendered += (rendered.empty() ? "" : ", ") + v.to_string();
        throw Error(ErrorCode::NoSuchRow, "no row with key (" + rendered + ") in " + quote_identifier(table));
    }
    const std::size_t self = *db.table_index(table);
    for (const auto& child : db.tables()) {
        for (const auto& fk : child.foreign_keys) {
            if (fk.foreign_table != self) continue;
            for (const Row& row : child.store.rows()) {
                Row ref;
                for (auto c : fk.local_columns) ref.push_back(row[c]);
                if (RowEq{}(ref, key) && !(&child == &t && RowEq{}(t.store.key_of(row), key))) {
                    throw Error(ErrorCode::RestrictViolation,
                                "row " + render_key(t.def, t.pk_columns, t.store.row(*pos)) + " of " + quote_identifier(table) +
                                    " is referenced by " + quote_identifier(child.def.name) + " row " +
                                    render_key(child.def, child.pk_columns, row));
                }
            }
        }
    }
    t.store.erase(*pos);
}

void update_row(Database& db, std::string_view table, Row row) {
    if (auto v = validate_row(db, table, row, true)) throw Error(v->code, v->message());
    Table& t = db.table(table);
    auto pos = t.store.find_key(t.store.key_of(row));
    if (!pos) throw Error(ErrorCode::NoSuchRow, "no row " + render_key(t.def, t.pk_columns, row) + " in " + quote_identifier(table));
    t.store.replace(*pos, std::move(row));
}

IndexHandle build_index(Database& db, std::string_view table, const std::vector<std::string>& columns) {
    Table& t = db.table(table);
    std::vector<std::size_t> positions;
    for (const auto& name : columns) {
        auto idx = t.def.column_index(name);
        if (!idx) throw Error(ErrorCode::UnknownColumn, "unknown column " + quote_identifier(name) + " in " + quote_identifier(table));
        positions.push_back(*idx);
    }
    if (positions.empty()) throw Error(ErrorCode::UnknownColumn, "index needs at least one column");
    const SecondaryIndex& index = t.store.ensure_index(positions);
    return IndexHandle(t.store, index);
}

std::size_t load_csv(Database& db, std::string_view table, std::istream& in) {
    Table& t = db.table(table);
    auto records = parse_csv(in);
    if (records.empty()) throw Error(ErrorCode::HeaderMismatch, "missing header row");

    const auto& header = records.front();
    const auto& cols = t.def.columns;
    std::vector<std::size_t> target(header.fields.size());
    std::vector<bool> covered(cols.size(), false);
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        auto idx = t.def.column_index(header.fields[i]);
        if (!idx || covered[*idx]) {
            throw Error(ErrorCode::HeaderMismatch,
                        "line 1: unexpected header column \"" + header.fields[i] + "\" for " + quote_identifier(table),
                        SourcePos{header.line, 1, 0});
        }
        covered[*idx] = true;
        target[i] = *idx;
    }
    if (header.fields.size() != cols.size()) {
        std::string missing;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!covered[c]) missing += (missing.empty() ? "" : ", ") + quote_identifier(cols[c].name);
        }
        throw Error(ErrorCode::HeaderMismatch, "line 1: header is missing " + missing, SourcePos{header.line, 1, 0});
    }

    const std::size_t before = t.store.size();
    try {
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            const std::string where = "line " + std::to_string(rec.line) + ": ";
            const SourcePos pos{rec.line, 1, 0};
            if (rec.fields.size() != cols.size()) {
                throw Error(ErrorCode::ArityMismatch,
                            where + "expected " + std::to_string(cols.size()) + " fields, got " + std::to_string(rec.fields.size()),
                            pos);
            }
            Row row(cols.size());
            for (std::size_t i = 0; i < rec.fields.size(); ++i) {
                const auto& column = cols[target[i]];
                auto value = Value::parse(column.type, rec.fields[i]);
                if (!value) {
                    throw Error(ErrorCode::TypeMismatch,
                                where + "TypeMismatch in " + quote_identifier(table) + " [" + column.name + "]: \"" +
                                    rec.fields[i] + "\" is not " + std::string(to_string(column.type)),
                                pos);
                }
                row[target[i]] = std::move(*value);
            }
            if (auto v = validate_row(db, table, row)) throw Error(v->code, where + v->message(), pos);
            t.store.append(std::move(row));
        }
    } catch (...) {
        t.store.truncate(before);
        throw;
    }
    return t.store.size() - before;
}

void dump_csv(const Database& db, std::string_view table, std::ostream& out) {
    const Table& t = db.table(table);
    std::vector<std::string> fields;
    for (const auto& c : t.def.columns) fields.push_back(c.name);
    write_csv_record(out, fields, false);
    for (const Row& row : t.store.rows()) {
        fields.clear();
        for (const auto& v : row) fields.push_back(v.to_string());
        write_csv_record(out, fields, true);
    }
}

std::string dump_csv(const Database& db, std::string_view table) {
    std::ostringstream out;
    dump_csv(db, table, out);
    return out.str();
}

std::string csv_file_name(std::string_view table) {
    std::string name(table);
    std::replace(name.begin(), name.end(), '/', '_');
    std::replace(name.begin(), name.end(), ' ', '_');
    return name + ".csv";
}

std::vector<std::pair<std::string, std::size_t>> load_dataset(Database& db, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    std::ifstream manifest(root / "manifest.txt");
    if (!manifest) throw Error(ErrorCode::IoError, "cannot open " + (root / "manifest.txt").string());

    std::vector<std::pair<std::string, std::size_t>> loaded;
    std::string line;
    while (std::getline(manifest, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t");
        std::string table = line.substr(first, last - first + 1);
        if (!db.find_table(table)) throw Error(ErrorCode::UnknownTable, "manifest names unknown table " + quote_identifier(table));
        const fs::path file = root / csv_file_name(table);
        std::ifstream in(file, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
        try {
            loaded.emplace_back(table, load_csv(db, table, in));
        } catch (const Error& e) {
            throw Error(e.code(), file.filename().string() + ": " + e.what());
        }
    }
    return loaded;
}

void save_dataset(const Database& db, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + root.string() + ": " + ec.message());

    std::ofstream manifest(root / "manifest.txt", std::ios::binary | std::ios::trunc);
    if (!manifest) throw Error(ErrorCode::IoError, "cannot write " + (root / "manifest.txt").string());
    for (auto idx : db.load_order()) {
        const auto& name = db.table_at(idx).def.name;
        manifest << name << '\n';
        std::ofstream out(root / csv_file_name(name), std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + (root / csv_file_name(name)).string());
        dump_csv(db, name, out);
    }
}

}  // namespace ottdb

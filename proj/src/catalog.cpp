#include "ottdb/catalog.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ottdb {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += quote_identifier(names[i]);
    }
    return out;
}

Violation make_violation(ErrorCode code, const Table& t, const Row& row, std::string constraint, std::string detail) {
    Violation v;
    v.code = code;
    v.table = t.def.name;
    if (row.size() == t.def.columns.size()) v.row_key = render_key(t.def, t.pk_columns, row);
    v.constraint = std::move(constraint);
    v.detail = std::move(detail);
    return v;
}

Row project(const Row& row, const std::vector<std::size_t>& columns) {
    Row key;
    key.reserve(columns.size());
    for (auto c : columns) key.push_back(row[c]);
    return key;
}

std::string render_tuple(const Row& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += ", ";
        out += key[i].is_text() ? "'" + key[i].to_string() + "'" : key[i].to_string();
    }
    return out + ")";
}

}  // namespace

std::string quote_identifier(std::string_view name) {
    bool plain = !name.empty() && !(name[0] >= '0' && name[0] <= '9');
    for (char c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) plain = false;
    }
    if (plain) return std::string(name);
    return "`" + std::string(name) + "`";
}

std::string render_key(const TableDef& def, const std::vector<std::size_t>& pk_columns, const Row& row) {
    std::string out = "(";
    for (std::size_t i = 0; i < pk_columns.size(); ++i) {
        if (i) out += ", ";
        const auto c = pk_columns[i];
        out += def.columns[c].name + "=" + row[c].to_string();
    }
    return out + ")";
}

std::string ForeignKey::describe() const {
    std::string local;
    for (std::size_t i = 0; i < local_columns.size(); ++i) local += (i ? ", " : "") + local_columns[i];
    return "(" + local + ") -> " + foreign_table;
}

std::optional<std::size_t> TableDef::column_index(std::string_view column) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == column) return i;
    }
    return std::nullopt;
}

std::string Violation::message() const {
    std::string out = std::string(to_string(code)) + " in " + quote_identifier(table);
    if (!row_key.empty()) out += " row " + row_key;
    if (!constraint.empty()) out += " [" + constraint + "]";
    if (!detail.empty()) out += ": " + detail;
    return out;
}

void Database::add_table(TableDef def) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::SchemaError, "table " + quote_identifier(def.name) + ": " + why);
    };
    if (def.name.empty()) fail("empty table name");
    if (by_name_.count(def.name)) fail("table already exists");
    if (def.columns.empty()) fail("no columns");
    std::set<std::string> seen;
    for (const auto& c : def.columns) {
        if (c.name.empty()) fail("empty column name");
        if (!seen.insert(c.name).second) fail("duplicate column " + quote_identifier(c.name));
    }
    if (def.primary_key.empty()) fail("missing primary key");

    Table t;
    std::set<std::size_t> pk_seen;
    for (const auto& name : def.primary_key) {
        auto idx = def.column_index(name);
        if (!idx) fail("primary key column " + quote_identifier(name) + " does not exist");
        if (!pk_seen.insert(*idx).second) fail("primary key repeats " + quote_identifier(name));
        t.pk_columns.push_back(*idx);
    }

    for (std::size_t f = 0; f < def.foreign_keys.size(); ++f) {
        const auto& fk = def.foreign_keys[f];
        if (fk.local_columns.empty() || fk.local_columns.size() != fk.foreign_columns.size()) {
            fail("foreign key " + fk.describe() + " has mismatched column lists");
        }
        const bool self = fk.foreign_table == def.name;
        const TableDef* target = nullptr;
        std::vector<std::size_t> target_pk;
        if (self) {
            target = &def;
            target_pk = t.pk_columns;
        } else {
            auto it = by_name_.find(fk.foreign_table);
            if (it == by_name_.end()) fail("foreign key references unknown table " + quote_identifier(fk.foreign_table));
            target = &tables_[it->second].def;
            target_pk = tables_[it->second].pk_columns;
        }
        if (fk.foreign_columns.size() != target_pk.size()) {
            fail("foreign key " + fk.describe() + " must reference the full primary key");
        }
        ResolvedForeignKey resolved;
        resolved.def_index = f;
        resolved.foreign_table = self ? tables_.size() : by_name_.at(fk.foreign_table);
        for (auto pk_col : target_pk) {
            const auto& pk_name = target->columns[pk_col].name;
            auto pos = std::find(fk.foreign_columns.begin(), fk.foreign_columns.end(), pk_name);
            if (pos == fk.foreign_columns.end()) {
                fail("foreign key " + fk.describe() + " does not cover primary key column " + quote_identifier(pk_name));
            }
            const auto& local_name = fk.local_columns[pos - fk.foreign_columns.begin()];
            auto local = def.column_index(local_name);
            if (!local) fail("foreign key column " + quote_identifier(local_name) + " does not exist");
            if (!comparable(def.columns[*local].type, target->columns[pk_col].type)) {
                fail("foreign key column " + quote_identifier(local_name) + " has incompatible type");
            }
            resolved.local_columns.push_back(*local);
        }
        t.foreign_keys.push_back(std::move(resolved));
    }

    for (const auto& check : def.checks) {
        std::vector<std::size_t> cols;
        if (check.columns.empty()) fail("empty check");
        for (const auto& name : check.columns) {
            auto idx = def.column_index(name);
            if (!idx || def.columns[*idx].type != ColumnType::Bool) {
                fail("check column " + quote_identifier(name) + " must be an existing BOOL column");
            }
            cols.push_back(*idx);
        }
        t.checks.push_back(std::move(cols));
    }

    t.store = RowStore(t.pk_columns);
    t.def = std::move(def);
    by_name_.emplace(t.def.name, tables_.size());
    tables_.push_back(std::move(t));
}

std::optional<std::size_t> Database::table_index(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

const Table* Database::find_table(std::string_view name) const {
    auto idx = table_index(name);
    return idx ? &tables_[*idx] : nullptr;
}

const Table& Database::table(std::string_view name) const {
    auto idx = table_index(name);
    if (!idx) throw Error(ErrorCode::UnknownTable, "unknown table " + quote_identifier(name));
    return tables_[*idx];
}

Table& Database::table(std::string_view name) {
    auto idx = table_index(name);
    if (!idx) throw Error(ErrorCode::UnknownTable, "unknown table " + quote_identifier(name));
    return tables_[*idx];
}

std::size_t Database::insert_unchecked(std::string_view name, Row row) {
    Table& t = table(name);
    if (row.size() != t.def.columns.size()) {
        throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(t.def.columns.size()) + " values, got " +
                                                  std::to_string(row.size()));
    }
    if (t.store.contains_key(t.store.key_of(row))) {
        throw Error(ErrorCode::DuplicateKey, "duplicate key " + render_key(t.def, t.pk_columns, row));
    }
    return t.store.append(std::move(row));
}

std::vector<std::size_t> Database::load_order() const {
    const std::size_t n = tables_.size();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::size_t> parents;
        for (const auto& fk : tables_[i].foreign_keys) {
            if (fk.foreign_table != i) parents.insert(fk.foreign_table);
        }
        indegree[i] = parents.size();
        for (auto p : parents) children[p].push_back(i);
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto i = ready.top();
        ready.pop();
        order.push_back(i);
        for (auto c : children[i]) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    return order;
}

std::size_t Database::total_rows() const {
    std::size_t total = 0;
    for (const auto& t : tables_) total += t.store.size();
    return total;
}

std::optional<Violation> validate_row(const Database& db, std::string_view table, const Row& row, bool replacing) {
    const Table* t = db.find_table(table);
    if (!t) {
        Violation v;
        v.code = ErrorCode::UnknownTable;
        v.table = std::string(table);
        v.detail = "no such table";
        return v;
    }
    const auto& cols = t->def.columns;
    if (row.size() != cols.size()) {
        return make_violation(ErrorCode::ArityMismatch, *t, row, "",
                              "expected " + std::to_string(cols.size()) + " values, got " + std::to_string(row.size()));
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (row[i].type() != cols[i].type) {
            Violation v = make_violation(ErrorCode::TypeMismatch, *t, row, cols[i].name,
                                         "expected " + std::string(to_string(cols[i].type)) + ", got " +
                                             std::string(to_string(row[i].type())));
            v.row_key.clear();
            return v;
        }
    }
    for (std::size_t c = 0; c < t->checks.size(); ++c) {
        int true_count = 0;
        for (auto col : t->checks[c]) true_count += row[col].as_bool() ? 1 : 0;
        if (true_count != 1) {
            return make_violation(ErrorCode::CheckViolation, *t, row, "exactly one of (" + join_names(t->def.checks[c].columns) + ")",
                                  std::to_string(true_count) + " set");
        }
    }
    if (!replacing && t->store.contains_key(t->store.key_of(row))) {
        return make_violation(ErrorCode::DuplicateKey, *t, row, "PRIMARY KEY (" + join_names(t->def.primary_key) + ")",
                              "key already present");
    }
    for (const auto& fk : t->foreign_keys) {
        Row key = project(row, fk.local_columns);
        const Table& parent = db.table_at(fk.foreign_table);
        if (!parent.store.contains_key(key)) {
            return make_violation(ErrorCode::ForeignKeyViolation, *t, row, t->def.foreign_keys[fk.def_index].describe(),
                                  "no row " + render_tuple(key) + " in " + quote_identifier(parent.def.name));
        }
    }
    return std::nullopt;
}

std::vector<Violation> check_integrity(const Database& db) {
    std::vector<Violation> out;
    // Key sets are recounted from the rows rather than read from the stores' indexes.
    std::vector<std::unordered_set<Row, RowHash, RowEq>> keys(db.table_count());
    for (std::size_t i = 0; i < db.table_count(); ++i) {
        const Table& t = db.table_at(i);
        for (const Row& row : t.store.rows()) {
            if (!keys[i].insert(project(row, t.pk_columns)).second) {
                out.push_back(make_violation(ErrorCode::DuplicateKey, t, row, "PRIMARY KEY (" + join_names(t.def.primary_key) + ")",
                                             "key appears more than once"));
            }
        }
    }
    for (std::size_t i = 0; i < db.table_count(); ++i) {
        const Table& t = db.table_at(i);
        for (const Row& row : t.store.rows()) {
            for (std::size_t c = 0; c < t.checks.size(); ++c) {
                int true_count = 0;
                for (auto col : t.checks[c]) true_count += row[col].is_bool() && row[col].as_bool() ? 1 : 0;
                if (true_count != 1) {
                    out.push_back(make_violation(ErrorCode::CheckViolation, t, row,
                                                 "exactly one of (" + join_names(t.def.checks[c].columns) + ")",
                                                 std::to_string(true_count) + " set"));
                }
            }
            for (const auto& fk : t.foreign_keys) {
                Row key = project(row, fk.local_columns);
                if (!keys[fk.foreign_table].count(key)) {
                    out.push_back(make_violation(ErrorCode::ForeignKeyViolation, t, row, t.def.foreign_keys[fk.def_index].describe(),
                                                 "no row " + render_tuple(key) + " in " +
                                                     quote_identifier(db.table_at(fk.foreign_table).def.name)));
                }
            }
        }
    }
    return out;
}

std::string schema_dump(const Database& db) {
    std::vector<const Table*> sorted;
    for (const auto& t : db.tables()) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [](const Table* a, const Table* b) { return a->def.name < b->def.name; });

    std::ostringstream out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const TableDef& def = sorted[i]->def;
        if (i) out << '\n';
        out << "TABLE " << quote_identifier(def.name) << '\n';
        for (const auto& c : def.columns) out << "  COLUMN " << quote_identifier(c.name) << ' ' << to_string(c.type) << '\n';
        out << "  PRIMARY KEY (" << join_names(def.primary_key) << ")\n";
        for (const auto& fk : def.foreign_keys) {
            out << "  FOREIGN KEY (" << join_names(fk.local_columns) << ") REFERENCES " << quote_identifier(fk.foreign_table)
                << " (" << join_names(fk.foreign_columns) << ")\n";
        }
        for (const auto& check : def.checks) out << "  CHECK EXACTLY ONE TRUE (" << join_names(check.columns) << ")\n";
    }
    return out.str();
}

namespace {

ColumnDef col(std::string name, ColumnType type) { return ColumnDef{std::move(name), type}; }

ForeignKey fk(std::vector<std::string> local, std::string table, std::vector<std::string> foreign) {
    return ForeignKey{std::move(local), std::move(table), std::move(foreign)};
}

ForeignKey show_fk() { return fk({"Show_id"}, "Collections_of_shows", {"Show_id"}); }
ForeignKey platform_fk() { return fk({"Platform_id"}, "Platforms", {"Platform_id"}); }

/// Show_id-keyed attribute table hanging directly off the hub.
TableDef show_attribute(std::string name, std::vector<ColumnDef> attrs) {
    TableDef def;
    def.name = std::move(name);
    def.columns.push_back(col("Show_id", ColumnType::Int));
    for (auto& a : attrs) def.columns.push_back(std::move(a));
    def.primary_key = {"Show_id"};
    def.foreign_keys = {show_fk()};
    return def;
}

/// (Platform_id, Show_id)-keyed table.
TableDef platform_show(std::string name, std::vector<ColumnDef> attrs) {
    TableDef def;
    def.name = std::move(name);
    def.columns = {col("Platform_id", ColumnType::Int), col("Show_id", ColumnType::Int)};
    for (auto& a : attrs) def.columns.push_back(std::move(a));
    def.primary_key = {"Platform_id", "Show_id"};
    def.foreign_keys = {platform_fk(), show_fk()};
    return def;
}

}  // namespace

Database builtin_schema() {
    using T = ColumnType;
    Database db;

    db.add_table({"Collections_of_shows",
                  {col("Show_id", T::Int), col("Release year", T::Int), col("Writer", T::Text), col("Genre", T::Text)},
                  {"Show_id"},
                  {},
                  {}});
    db.add_table(show_attribute("Show_id-name", {col("Show Name", T::Text)}));
    db.add_table({"Actors",
                  {col("Actor_id", T::Int), col("Actor name", T::Text), col("Gender", T::Text), col("Age", T::Int),
                   col("Nationality", T::Text)},
                  {"Actor_id"},
                  {},
                  {}});
    db.add_table({"Productions", {col("Production_id", T::Int), col("Production_Name", T::Text)}, {"Production_id"}, {}, {}});
    db.add_table({"Platforms", {col("Platform_id", T::Int), col("Platform name", T::Text)}, {"Platform_id"}, {}, {}});

    db.add_table({"Actor_id-Show_id",
                  {col("Actor_id", T::Int), col("Show_id", T::Int)},
                  {"Actor_id", "Show_id"},
                  {fk({"Actor_id"}, "Actors", {"Actor_id"}), show_fk()},
                  {}});
    db.add_table({"Production_id-Show_id",
                  {col("Production_id", T::Int), col("Show_id", T::Int)},
                  {"Production_id", "Show_id"},
                  {fk({"Production_id"}, "Productions", {"Production_id"}), show_fk()},
                  {}});
    db.add_table(show_attribute("Critics_Rating", {col("IMDB rating", T::Decimal), col("Rotten Tomatoes", T::Decimal)}));

    TableDef pg = show_attribute("PG_Rating", {col("U", T::Bool), col("U/A", T::Bool), col("A", T::Bool)});
    pg.checks = {ExactlyOneTrue{{"U", "U/A", "A"}}};
    db.add_table(std::move(pg));

    db.add_table(platform_show("Platform_id-Show_id", {}));
    db.add_table(platform_show("Subscriptions", {col("required(y/n)", T::Bool)}));
    db.add_table(platform_show("Availability", {col("Availability", T::Bool)}));
    db.add_table(show_attribute("Relevance", {col("Relevance", T::Bool)}));
    db.add_table(show_attribute("Duration", {col("Duration", T::Int)}));

    TableDef resolution = platform_show("Resolution", {col("Resolution", T::Text), col("Required", T::Bool)});
    resolution.foreign_keys.push_back(fk({"Platform_id", "Show_id"}, "Subscriptions", {"Platform_id", "Show_id"}));
    db.add_table(std::move(resolution));

    TableDef series = show_attribute("TV_series", {col("Production_id", T::Int), col("Duration", T::Int),
                                                   col("Seasons", T::Int), col("Episodes", T::Int)});
    series.foreign_keys.push_back(fk({"Production_id"}, "Productions", {"Production_id"}));
    db.add_table(std::move(series));

    db.add_table(show_attribute("Subtitles", {col("Hindi", T::Bool), col("English", T::Bool), col("Tamil", T::Bool),
                                              col("Telugu", T::Bool)}));
    db.add_table(show_attribute("Ongoing", {col("Ongoing", T::Bool)}));
    db.add_table(show_attribute("Director", {col("Director", T::Text)}));
    db.add_table({"Related_shows",
                  {col("Show_id", T::Int), col("Related_Show_id", T::Int)},
                  {"Show_id", "Related_Show_id"},
                  {show_fk(), fk({"Related_Show_id"}, "Collections_of_shows", {"Show_id"})},
                  {}});
    db.add_table(show_attribute("Inspiration", {col("Inspired from", T::Text)}));
    db.add_table(show_attribute("Nominations", {col("Oscar nominated(y/n)", T::Bool)}));
    db.add_table(show_attribute("Budget", {col("Budget", T::Int)}));
    db.add_table(platform_show("Statistics", {col("views/mo", T::Int)}));
    db.add_table({"Best_of_year", {col("Show_id", T::Int), col("Year", T::Int)}, {"Show_id", "Year"}, {show_fk()}, {}});
    db.add_table({"Actor_nomination",
                  {col("Actor_id", T::Int), col("Actor Oscar nominated(y/n)", T::Bool)},
                  {"Actor_id"},
                  {fk({"Actor_id"}, "Actors", {"Actor_id"})},
                  {}});
    return db;
}

}  // namespace ottdb

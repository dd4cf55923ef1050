#include "ottdb/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <string_view>

namespace ottdb {

namespace {

std::uint64_t pick(std::uint64_t& state, std::uint64_t n) { return n == 0 ? 0 : next_random(state) % n; }

std::int64_t between(std::uint64_t& state, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(pick(state, static_cast<std::uint64_t>(hi - lo + 1)));
}

bool chance(std::uint64_t& state, int percent) { return static_cast<int>(pick(state, 100)) < percent; }

template <typename T>
const T& choose(std::uint64_t& state, const std::vector<T>& items) {
    return items[pick(state, items.size())];
}

bool has(std::string_view haystack, std::string_view needle) { return haystack.find(needle) != std::string_view::npos; }

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

std::uint64_t next_random(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Value random_value(std::uint64_t& state, const ColumnDef& column) {
    const std::string_view name = column.name;
    switch (column.type) {
        case ColumnType::Int:
            if (has(name, "_id")) return Value(between(state, 1, 400));
            if (has(name, "year") || name == "Year") return Value(between(state, 1950, 2025));
            if (name == "Age") return Value(between(state, 10, 80));
            if (name == "Seasons") return Value(between(state, 1, 6));
            if (name == "Episodes") return Value(between(state, 1, 12));
            if (name == "Duration") return Value(between(state, 20, 180));
            if (name == "Budget") return Value(between(state, 1000, 1000000));
            if (has(name, "views")) return Value(between(state, 0, 5000));
            return Value(between(state, 0, 100));
        case ColumnType::Decimal: {
            // halves between 0 and 10, occasionally a finer fraction
            std::int64_t units = between(state, 0, 20) * (Decimal::kScale / 2);
            if (chance(state, 10)) units += 250000;
            return Value(Decimal{units});
        }
        case ColumnType::Bool:
            return Value(chance(state, 50));
        case ColumnType::Text: {
            static const std::vector<std::string> writers = {"S.S. Wilson", "Manya Starr", "Larry Cohen", "Joe Camp"};
            static const std::vector<std::string> genres = {"Adventure", "Drama", "Comedy", "Thriller"};
            static const std::vector<std::string> genders = {"Male", "Female"};
            static const std::vector<std::string> nations = {"India", "USA", "France", "Japan", "Brazil"};
            static const std::vector<std::string> generic = {"alpha", "Beta", "gamma, delta", "O'Neil", "Netflix",
                                                             "Voot", "\"quoted\"", "Zeta"};
            if (name == "Writer" || name == "Director") return Value(choose(state, writers));
            if (name == "Genre") return Value(choose(state, genres));
            if (name == "Gender") return Value(choose(state, genders));
            if (name == "Nationality") return Value(choose(state, nations));
            return Value(choose(state, generic));
        }
    }
    return Value();
}

Database random_database(std::uint64_t seed, const Database& schema, std::size_t max_rows_per_table) {
    Database db = schema;
    std::uint64_t state = seed * 0x2545F4914F6CDD1Dull + 1;

    for (auto t_idx : db.load_order()) {
        Table& table = db.table_at(t_idx);
        const auto& cols = table.def.columns;
        const std::size_t target = pick(state, max_rows_per_table + 1);

        auto fks = table.foreign_keys;
        std::stable_sort(fks.begin(), fks.end(),
                         [](const auto& a, const auto& b) { return a.local_columns.size() > b.local_columns.size(); });
        bool orphan = false;
        for (const auto& fk : fks) {
            if (fk.foreign_table != t_idx && db.table_at(fk.foreign_table).store.empty()) orphan = true;
        }
        if (orphan) continue;

        for (std::size_t attempt = 0; attempt < target * 4 + 8 && table.store.size() < target; ++attempt) {
            Row row(cols.size());
            std::vector<bool> assigned(cols.size(), false);
            bool skip = false;
            for (const auto& fk : fks) {
                const Table& parent = db.table_at(fk.foreign_table);
                if (parent.store.empty()) {
                    skip = true;
                    break;
                }
                const Row& source = parent.store.row(pick(state, parent.store.size()));
                for (std::size_t i = 0; i < fk.local_columns.size(); ++i) {
                    const auto local = fk.local_columns[i];
                    if (!assigned[local]) {
                        row[local] = source[parent.pk_columns[i]];
                        assigned[local] = true;
                    }
                }
            }
            if (skip) break;
            for (const auto& check : table.checks) {
                const auto chosen = check[pick(state, check.size())];
                for (auto c : check) {
                    row[c] = Value(c == chosen);
                    assigned[c] = true;
                }
            }
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (!assigned[c]) row[c] = random_value(state, cols[c]);
            }
            if (!validate_row(db, table.def.name, row)) table.store.append(std::move(row));
        }
    }
    return db;
}

namespace {

struct ScopeItem {
    std::size_t table;
    std::string alias;
};

struct ColumnChoice {
    std::size_t scope;
    std::size_t column;
};

class QueryGenerator {
public:
    QueryGenerator(std::uint64_t seed, const Database& db) : db_(db), state_(seed ^ 0xA0761D6478BD642Full) {}

    std::string make() {
        scope_.clear();
        fan_outs_ = 0;
        std::string sql;
        const std::size_t joins = pick(state_, 7);
        add_scope(pick(state_, db_.table_count()));
        std::string from = "FROM " + table_sql(0);
        for (std::size_t j = 0; j < joins; ++j) {
            auto clause = add_join();
            if (clause.empty()) break;
            from += "\nJOIN " + clause;
        }

        const int mode = static_cast<int>(pick(state_, 100));  // <50 plain, <85 grouped, else whole-table aggregate
        std::vector<std::string> items;
        std::vector<std::string> order;
        std::vector<ColumnChoice> groups;
        if (mode < 50) {
            const std::size_t n = 1 + pick(state_, 4);
            for (std::size_t i = 0; i < n; ++i) items.push_back(ref(any_column()));
            if (chance(state_, 50)) {
                const std::size_t k = 1 + pick(state_, 2);
                for (std::size_t i = 0; i < k; ++i) order.push_back(ref(any_column()) + direction());
            }
        } else {
            if (mode < 85) {
                const std::size_t n = 1 + pick(state_, 2);
                for (std::size_t i = 0; i < n; ++i) groups.push_back(any_column());
                for (const auto& g : groups) {
                    if (chance(state_, 80)) items.push_back(ref(g));
                }
            }
            const std::size_t aggs = 1 + pick(state_, 2);
            for (std::size_t i = 0; i < aggs; ++i) items.push_back(aggregate());
            for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[pick(state_, i)]);
            if (chance(state_, 60)) {
                const std::size_t k = 1 + pick(state_, 2);
                for (std::size_t i = 0; i < k; ++i) {
                    if (!groups.empty() && chance(state_, 50)) {
                        order.push_back(ref(choose(state_, groups)) + direction());
                    } else {
                        order.push_back(aggregate() + direction());
                    }
                }
            }
        }

        sql += kw("SELECT") + " ";
        for (std::size_t i = 0; i < items.size(); ++i) {
            sql += (i ? ", " : "") + items[i];
            if (chance(state_, 10)) sql += " " + kw("AS") + " 'c" + std::to_string(i) + "'";
        }
        sql += "\n" + from;

        const std::size_t preds = pick(state_, 5);
        for (std::size_t i = 0; i < preds; ++i) {
            sql += i == 0 ? "\n" + kw("WHERE") + " " : " " + kw("AND") + " ";
            sql += predicate();
        }
        if (!groups.empty()) {
            sql += "\n" + kw("GROUP") + " " + kw("BY") + " ";
            for (std::size_t i = 0; i < groups.size(); ++i) sql += (i ? ", " : "") + ref(groups[i]);
        }
        if (!order.empty()) {
            sql += "\n" + kw("ORDER") + " " + kw("BY") + " ";
            for (std::size_t i = 0; i < order.size(); ++i) sql += (i ? ", " : "") + order[i];
        }
        if (chance(state_, 50)) sql += ";";
        return sql;
    }

private:
    const TableDef& def(std::size_t scope) const { return db_.table_at(scope_[scope].table).def; }

    void add_scope(std::size_t table) { scope_.push_back(ScopeItem{table, "t" + std::to_string(scope_.size())}); }

    std::string kw(const std::string& word) {
        if (!chance(state_, 15)) return word;
        std::string lower = word;
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return lower;
    }

    std::string direction() {
        const auto r = pick(state_, 3);
        return r == 0 ? "" : r == 1 ? " " + kw("ASC") : " " + kw("DESC");
    }

    std::string table_sql(std::size_t scope) {
        const auto& name = def(scope).name;
        std::string out = quote_identifier(name);
        if (out == name && chance(state_, 20)) out = "`" + name + "`";
        out += chance(state_, 30) ? " " + kw("AS") + " " : " ";
        return out + scope_[scope].alias;
    }

    bool unique_in_scope(const std::string& name) const {
        std::size_t hits = 0;
        for (std::size_t s = 0; s < scope_.size(); ++s) {
            for (const auto& c : def(s).columns) hits += iequals(c.name, name) ? 1 : 0;
        }
        return hits == 1;
    }

    std::string ref(const ColumnChoice& c) {
        const auto& name = def(c.scope).columns[c.column].name;
        std::string col = quote_identifier(name);
        if (col == name) {
            const auto r = pick(state_, 5);
            if (r == 0) {
                col = "`" + name + "`";
            } else if (r == 1) {
                for (auto& ch : col) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            }
        }
        if (unique_in_scope(name) && chance(state_, 25)) return col;
        std::string alias = scope_[c.scope].alias;
        if (chance(state_, 10)) alias[0] = 'T';
        return alias + "." + col;
    }

    ColumnChoice any_column() {
        const std::size_t s = pick(state_, scope_.size());
        return ColumnChoice{s, pick(state_, def(s).columns.size())};
    }

    std::string aggregate() {
        if (chance(state_, 50)) return kw("COUNT") + "(" + ref(any_column()) + ")";
        std::vector<ColumnChoice> numeric;
        for (std::size_t s = 0; s < scope_.size(); ++s) {
            const auto& cols = def(s).columns;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (is_numeric(cols[c].type)) numeric.push_back({s, c});
            }
        }
        if (numeric.empty()) return kw("COUNT") + "(" + ref(any_column()) + ")";
        return kw("SUM") + "(" + ref(choose(state_, numeric)) + ")";
    }

    std::string predicate() {
        static const std::vector<std::string> ops = {"=", "<>", "<", "<=", ">", ">="};
        const ColumnChoice lhs = any_column();
        const ColumnDef& col = def(lhs.scope).columns[lhs.column];
        std::string op = choose(state_, ops);
        if (col.type == ColumnType::Text || col.type == ColumnType::Bool) {
            if (chance(state_, 60)) op = "=";
        }
        if (chance(state_, 20)) {
            std::vector<ColumnChoice> others;
            for (std::size_t s = 0; s < scope_.size(); ++s) {
                const auto& cols = def(s).columns;
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    if (comparable(cols[c].type, col.type) && !(s == lhs.scope && c == lhs.column)) others.push_back({s, c});
                }
            }
            if (!others.empty()) return ref(lhs) + " " + op + " " + ref(choose(state_, others));
        }
        Value v = random_value(state_, col);
        std::string literal;
        if (v.is_text()) {
            literal = "'";
            for (char ch : v.as_text()) literal += ch == '\'' ? std::string("''") : std::string(1, ch);
            literal += "'";
        } else {
            literal = v.to_string();
        }
        return ref(lhs) + (chance(state_, 50) ? " " + op + " " : op) + literal;
    }

    /// Candidate ON clauses linking a new table to one already in scope.
    std::string add_join() {
        struct Edge {
            std::size_t scope;
            std::size_t scope_column;
            std::size_t table;
            std::size_t table_column;
        };
        std::vector<Edge> edges;
        auto fk_pairs = [&](std::size_t table) {
            // (local column, referenced table, referenced column)
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
            const Table& t = db_.table_at(table);
            for (const auto& fk : t.foreign_keys) {
                const Table& parent = db_.table_at(fk.foreign_table);
                for (std::size_t i = 0; i < fk.local_columns.size(); ++i) {
                    out.emplace_back(fk.local_columns[i], fk.foreign_table, parent.pk_columns[i]);
                }
            }
            return out;
        };
        for (std::size_t s = 0; s < scope_.size(); ++s) {
            const std::size_t st = scope_[s].table;
            for (std::size_t t = 0; t < db_.table_count(); ++t) {
                for (auto [local, parent, pcol] : fk_pairs(st)) {
                    if (parent == t) edges.push_back({s, local, t, pcol});
                }
                for (auto [local, parent, pcol] : fk_pairs(t)) {
                    if (parent == st) edges.push_back({s, pcol, t, local});
                }
                for (auto [a_local, a_parent, a_col] : fk_pairs(st)) {
                    for (auto [b_local, b_parent, b_col] : fk_pairs(t)) {
                        if (a_parent == b_parent && a_col == b_col) edges.push_back({s, a_local, t, b_local});
                    }
                }
            }
        }
        // A join on anything but the new table's whole key can multiply the
        // row count; two of those on a skewed instance already outgrow what
        // the nested-loop oracle can enumerate, so allow one per query.
        auto fans_out = [&](const Edge& e) {
            const auto& pk = db_.table_at(e.table).pk_columns;
            return !(pk.size() == 1 && pk[0] == e.table_column);
        };
        if (fan_outs_ > 0) std::erase_if(edges, fans_out);
        if (edges.empty()) return {};
        const Edge e = choose(state_, edges);
        fan_outs_ += fans_out(e) ? 1 : 0;
        add_scope(e.table);
        const std::size_t fresh = scope_.size() - 1;
        std::string left = ref(ColumnChoice{e.scope, e.scope_column});
        std::string right = ref(ColumnChoice{fresh, e.table_column});
        if (chance(state_, 30)) std::swap(left, right);
        return table_sql(fresh) + " " + kw("ON") + " " + left + " = " + right;
    }

    const Database& db_;
    std::uint64_t state_;
    std::vector<ScopeItem> scope_;
    int fan_outs_ = 0;
};

}  // namespace

std::vector<std::string> generate_queries(std::uint64_t seed, const Database& schema, std::size_t count) {
    QueryGenerator gen(seed, schema);
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(gen.make());
    return out;
}

}  // namespace ottdb

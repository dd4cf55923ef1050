// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "ottdb/access.hpp"
#include "ottdb/bind.hpp"
#include "ottdb/catalog.hpp"
#include "ottdb/cli.hpp"
#include "ottdb/csv.hpp"
#include "ottdb/executor.hpp"
#include "ottdb/oracle.hpp"
#include "ottdb/paper_queries.hpp"
#include "ottdb/plan.hpp"
#include "ottdb/sql.hpp"
#include "ottdb/storage.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace ottdb;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << " s";
    return o.str();
}

std::filesystem::path fixture_dir() { return std::filesystem::path(OTTDB_SOURCE_DIR) / "fixtures" / "paper"; }

Database fixture() {
    auto db = builtin_schema();
    load_dataset(db, fixture_dir().string());
    return db;
}

// ---------------------------------------------------------------- 1

Verdict parse_suite() {
    const auto start = Clock::now();
    const auto schema = builtin_schema();
    std::size_t tokens = 0;
    for (int n = 1; n <= 6; ++n) {
        try {
            const auto toks = sql::tokenize(paper_query(n));
            tokens += toks.size();
            auto ast = sql::parse(std::span<const sql::Token>(toks));
            auto bound = ottdb::bind(ast, schema);
            auto p = plan(bound);
            if (explain(p).empty()) return {false, "Q" + std::to_string(n) + " produced an empty plan"};
        } catch (const Error& e) {
            return {false, "Q" + std::to_string(n) + ": " + e.what()};
        }
    }
    const double t = seconds_since(start);
    return {t < 1.0, "6 queries, " + std::to_string(tokens) + " tokens, " + fmt_seconds(t)};
}

// ---------------------------------------------------------------- 2

struct CliRun {
    int code = 0;
    std::vector<std::vector<std::string>> rows;  // csv fields, header excluded
};

CliRun paperq(int n) {
    std::istringstream in;
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli({"--format", "csv", "--dataset", fixture_dir().string(), "paperq", std::to_string(n)}, in, out, err);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        std::istringstream one(line + "\n");
        auto records = parse_csv(one);
        if (!records.empty()) r.rows.push_back(records[0].fields);
    }
    return r;
}

using Rows = std::vector<std::vector<std::string>>;

Verdict fixture_replay() {
    std::vector<std::string> problems;
    const auto db = fixture();

    auto q3 = paperq(3);
    const Rows want3 = {{"For the Love of Ada", "S.S. Wilson", "1974"}, {"The Associates", "S.S. Wilson", "1988"}};
    if (q3.code != 0 || q3.rows != want3) problems.push_back("Q3 rows differ");

    // Expected Q2 rows come straight from the stored tables, not from a query.
    Rows want2;
    const auto& names = db.table("Show_id-name");
    for (const auto& rating : scan(db, "Critics_Rating")) {
        if (rating[1].as_decimal() != Decimal::from_int(10)) continue;
        for (const auto& name : names.store.rows()) {
            if (name[0] == rating[0]) want2.push_back({name[1].as_text(), rating[1].to_string()});
        }
    }
    auto q2 = paperq(2);
    auto got2 = q2.rows;
    std::sort(got2.begin(), got2.end());
    std::sort(want2.begin(), want2.end());
    const bool granddaddy = std::any_of(got2.begin(), got2.end(), [](const auto& r) { return r[0] == "Make Room for Granddaddy"; });
    if (q2.code != 0 || got2 != want2 || !granddaddy) problems.push_back("Q2 multiset differs");

    std::map<std::int64_t, std::string> show_name, production_name;
    for (const auto& r : scan(db, "Show_id-name")) show_name[r[0].as_int()] = r[1].as_text();
    for (const auto& r : scan(db, "Productions")) production_name[r[0].as_int()] = r[1].as_text();
    Rows want5;
    const auto& tv = db.table("TV_series").def;
    const auto show = *tv.column_index("Show_id"), production = *tv.column_index("Production_id");
    const auto seasons = *tv.column_index("Seasons"), episodes = *tv.column_index("Episodes");
    for (const auto& r : scan(db, "TV_series")) {
        if (r[seasons].as_int() < 2 && r[episodes].as_int() < 6) {
            want5.push_back({r[show].to_string(), show_name.at(r[show].as_int()), production_name.at(r[production].as_int()),
                             r[seasons].to_string(), r[episodes].to_string()});
        }
    }
    auto q5 = paperq(5);
    auto got5 = q5.rows;
    const std::vector<std::string> forward = {"11", "Three Men of the City", "Forward Media", "1", "5"};
    const bool has_forward = std::find(got5.begin(), got5.end(), forward) != got5.end();
    std::sort(got5.begin(), got5.end());
    std::sort(want5.begin(), want5.end());
    if (q5.code != 0 || got5 != want5 || !has_forward) problems.push_back("Q5 rows differ");

    if (!problems.empty()) {
        std::string d;
        for (const auto& p : problems) d += (d.empty() ? "" : "; ") + p;
        return {false, d};
    }
    return {true, "Q3 2 rows, Q2 " + std::to_string(got2.size()) + " rows, Q5 " + std::to_string(got5.size()) + " rows"};
}

// ---------------------------------------------------------------- 3

Verdict differential() {
    const auto start = Clock::now();
    const auto schema = builtin_schema();
    std::size_t compared = 0, ordered = 0, mismatches = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto db = random_database(seed, schema, 200);
        std::vector<std::string> queries;
        for (int n = 1; n <= 6; ++n) queries.emplace_back(paper_query(n));
        for (auto& q : generate_queries(seed, schema, 500)) queries.push_back(std::move(q));
        for (const auto& text : queries) {
            bool ok = false;
            bool has_order = false;
            try {
                const auto bound = ottdb::bind(text, db);
                has_order = !bound.order_by.empty();
                const auto engine = execute(db, plan(bound));
                const auto reference = oracle(db, bound);
                ok = has_order ? same_ordered(engine, reference) : same_multiset(engine, reference);
            } catch (const Error& e) {
                if (first.empty()) first = std::string(" first error: ") + e.what();
            }
            ++compared;
            ordered += has_order;
            if (!ok) {
                ++mismatches;
                if (first.empty()) first = " first mismatch (seed " + std::to_string(seed) + "): " + text;
            }
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 60.0, std::to_string(compared) + " comparisons (" + std::to_string(ordered) + " ordered), " +
                                             std::to_string(mismatches) + " mismatches, " + fmt_seconds(t) + first};
}

// ---------------------------------------------------------------- 4

// Keeps its own copy of every key and predicts validity from the table
// definitions alone, without asking the storage layer.
class ShadowModel {
public:
    explicit ShadowModel(const Database& db) {
        for (const auto& t : db.tables()) {
            defs_[t.def.name] = t.def;
            auto& keys = keys_[t.def.name];
            for (const auto& row : t.store.rows()) keys.push_back(key_of(t.def, row));
            sets_[t.def.name] = std::set<std::vector<std::string>>(keys.begin(), keys.end());
        }
    }

    bool valid(const std::string& table, const Row& row) const {
        const auto& def = defs_.at(table);
        if (row.size() != def.columns.size()) return false;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i].type() != def.columns[i].type) return false;
        }
        for (const auto& check : def.checks) {
            int on = 0;
            for (const auto& c : check.columns) on += row[*def.column_index(c)].as_bool() ? 1 : 0;
            if (on != 1) return false;
        }
        if (sets_.at(table).count(key_of(def, row))) return false;
        for (const auto& fk : def.foreign_keys) {
            if (!sets_.at(fk.foreign_table).count(parent_key(fk, row, def))) return false;
        }
        return true;
    }

    void add(const std::string& table, const Row& row) {
        auto k = key_of(defs_.at(table), row);
        keys_[table].push_back(k);
        sets_[table].insert(std::move(k));
    }

    // A random existing key of `table`, as text in primary key order.
    const std::vector<std::string>* pick(const std::string& table, std::uint64_t& state) const {
        const auto& keys = keys_.at(table);
        if (keys.empty()) return nullptr;
        return &keys[next_random(state) % keys.size()];
    }

    const TableDef& def(const std::string& table) const { return defs_.at(table); }

private:
    static std::vector<std::string> key_of(const TableDef& def, const Row& row) {
        std::vector<std::string> k;
        for (const auto& c : def.primary_key) k.push_back(row[*def.column_index(c)].to_string());
        return k;
    }

    std::vector<std::string> parent_key(const ForeignKey& fk, const Row& row, const TableDef& def) const {
        const auto& parent = defs_.at(fk.foreign_table);
        std::vector<std::string> k;
        for (const auto& pk : parent.primary_key) {
            const auto at = std::find(fk.foreign_columns.begin(), fk.foreign_columns.end(), pk) - fk.foreign_columns.begin();
            k.push_back(row[*def.column_index(fk.local_columns[at])].to_string());
        }
        return k;
    }

    std::map<std::string, TableDef> defs_;
    std::map<std::string, std::vector<std::vector<std::string>>> keys_;
    std::map<std::string, std::set<std::vector<std::string>>> sets_;
};

Value from_text(ColumnType type, const std::string& text) { return *Value::parse(type, text); }

// Tries to build a row the shadow model accepts.
std::optional<Row> valid_candidate(const ShadowModel& shadow, const std::string& table, std::uint64_t& state) {
    const auto& def = shadow.def(table);
    for (int attempt = 0; attempt < 40; ++attempt) {
        Row row;
        for (const auto& c : def.columns) row.push_back(random_value(state, c));
        for (const auto& check : def.checks) {
            const auto on = next_random(state) % check.columns.size();
            for (std::size_t i = 0; i < check.columns.size(); ++i) row[*def.column_index(check.columns[i])] = Value(i == on);
        }
        // Fill referencing columns from live parent keys; the last key wins
        // where two references share a column, and the shadow sorts out the rest.
        bool orphan = false;
        for (const auto& fk : def.foreign_keys) {
            const auto* key = shadow.pick(fk.foreign_table, state);
            if (!key) {
                orphan = true;
                break;
            }
            const auto& parent = shadow.def(fk.foreign_table);
            for (std::size_t i = 0; i < parent.primary_key.size(); ++i) {
                const auto at = std::find(fk.foreign_columns.begin(), fk.foreign_columns.end(), parent.primary_key[i]) -
                                fk.foreign_columns.begin();
                const auto col = *def.column_index(fk.local_columns[at]);
                row[col] = from_text(def.columns[col].type, (*key)[i]);
            }
        }
        if (!orphan && shadow.valid(table, row)) return row;
    }
    return std::nullopt;
}

Value wrong_type(const Value& v) {
    switch (v.type()) {
        case ColumnType::Int: return Value("12");
        case ColumnType::Decimal: return Value(12);
        case ColumnType::Text: return Value(12);
        case ColumnType::Bool: return Value(1);
    }
    return Value("?");
}

// Breaks a valid row in one of several ways; returns nullopt if the chosen
// way does not apply to this table.
std::optional<Row> break_row(const Database& db, const ShadowModel& shadow, const std::string& table, Row row, std::uint64_t& state) {
    const auto& def = shadow.def(table);
    switch (next_random(state) % 5) {
        case 0: {  // duplicate key
            const auto existing = scan(db, table);
            if (existing.empty()) return std::nullopt;
            const auto& other = existing[next_random(state) % existing.size()];
            for (const auto& c : def.primary_key) {
                const auto i = *def.column_index(c);
                row[i] = other[i];
            }
            return row;
        }
        case 1: {  // dangling reference
            if (def.foreign_keys.empty()) return std::nullopt;
            const auto& fk = def.foreign_keys[next_random(state) % def.foreign_keys.size()];
            const auto i = *def.column_index(fk.local_columns[0]);
            row[i] = def.columns[i].type == ColumnType::Text ? Value("no such parent") : Value(900000000 + static_cast<int>(next_random(state) % 1000));
            return row;
        }
        case 2: {
            const auto i = next_random(state) % row.size();
            row[i] = wrong_type(row[i]);
            return row;
        }
        case 3:
            if (next_random(state) % 2) {
                row.pop_back();
            } else {
                row.push_back(Value(1));
            }
            return row;
        default: {
            if (def.checks.empty()) return std::nullopt;
            const bool all = next_random(state) % 2;
            for (const auto& c : def.checks[0].columns) row[*def.column_index(c)] = Value(all);
            return row;
        }
    }
}

std::string csv_line(const std::vector<std::string>& headers, const Row& row) {
    auto text = ResultSet{headers, {row}}.to_csv();
    return text.substr(text.find('\n') + 1);
}

Verdict integrity() {
    const auto schema = builtin_schema();
    auto db = random_database(404, schema, 30);
    ShadowModel shadow(db);
    std::uint64_t state = 0xC0FFEE;

    std::vector<std::string> tables;
    for (const auto& t : db.tables()) tables.push_back(t.def.name);

    std::size_t attempts = 0, intended_bad = 0, accepted = 0, disagreements = 0;
    std::string first;
    while (attempts < 10000) {
        const auto& table = tables[next_random(state) % tables.size()];
        auto row = valid_candidate(shadow, table, state);
        if (!row) continue;
        const bool make_bad = attempts % 2 == 1;
        if (make_bad) {
            row = break_row(db, shadow, table, *row, state);
            if (!row) continue;
        }
        const bool predicted = shadow.valid(table, *row);
        if (predicted == make_bad) continue;  // the mutation happened to be harmless, or vice versa
        const auto before = db.total_rows();
        bool took = true;
        try {
            insert(db, table, *row);
        } catch (const Error&) {
            took = false;
        }
        ++attempts;
        intended_bad += make_bad;
        if (took) {
            ++accepted;
            shadow.add(table, *row);
        }
        if (took != predicted || db.total_rows() != before + (took ? 1 : 0)) {
            ++disagreements;
            if (first.empty()) first = " first disagreement on " + table;
        }
    }
    const auto violations = check_integrity(db);

    // CSV atomicity: one bad line at a random position among good ones.
    std::size_t atomic_trials = 0, atomic_ok = 0;
    const std::vector<std::string> csv_tables = {"Actor_id-Show_id", "Statistics", "PG_Rating", "Critics_Rating", "Resolution"};
    for (int trial = 0; trial < 60; ++trial) {
        const auto& table = csv_tables[trial % csv_tables.size()];
        const auto& def = shadow.def(table);
        std::vector<std::string> headers;
        for (const auto& c : def.columns) headers.push_back(c.name);

        ShadowModel scratch = shadow;
        std::vector<std::string> lines;
        std::vector<Row> good;
        while (good.size() < 12) {
            auto row = valid_candidate(scratch, table, state);
            if (!row) break;
            scratch.add(table, *row);
            good.push_back(*row);
            lines.push_back(csv_line(headers, *row));
        }
        if (good.empty()) continue;
        std::string bad;
        switch (next_random(state) % 4) {
            case 0: bad = lines[next_random(state) % lines.size()]; break;  // repeats an earlier or later key
            case 1: {
                auto r = good[0];
                r[*def.column_index(def.foreign_keys[0].local_columns[0])] = Value(900000001);
                bad = csv_line(headers, r);
                break;
            }
            case 2: bad = "not a number" + std::string(def.columns.size() - 1, ',') + "\n"; break;
            default: bad = "1\n"; break;
        }
        lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(next_random(state) % (lines.size() + 1)), bad);

        std::string text = ResultSet{headers, {}}.to_csv();
        for (const auto& l : lines) text += l;

        ++atomic_trials;
        const auto before = dump_csv(db, table);
        const auto rows_before = db.total_rows();
        std::istringstream in(text);
        bool threw = false;
        try {
            load_csv(db, table, in);
        } catch (const Error&) {
            threw = true;
        }
        if (threw && dump_csv(db, table) == before && db.total_rows() == rows_before) ++atomic_ok;
    }

    const bool pass = attempts == 10000 && intended_bad == 5000 && accepted == 5000 && disagreements == 0 && violations.empty() &&
                      atomic_trials > 0 && atomic_ok == atomic_trials;
    return {pass, std::to_string(attempts) + " attempts, " + std::to_string(intended_bad) + " invalid, " + std::to_string(accepted) +
                      " accepted, " + std::to_string(disagreements) + " disagreements, " + std::to_string(violations.size()) +
                      " violations; csv atomicity " + std::to_string(atomic_ok) + "/" + std::to_string(atomic_trials) + first};
}

// ---------------------------------------------------------------- 5

Verdict rbac() {
    using A = Action;
    // The grid as written down for the access control module.
    const std::map<Role, std::set<Action>> grid = {
        {Role::Client, {A::Query, A::DumpCsv}},
        {Role::Contributor, {A::Query, A::Insert, A::LoadCsv, A::DumpCsv}},
        {Role::Admin, {A::Query, A::Insert, A::LoadCsv, A::CreateTable, A::DeleteRow, A::UpdateRow, A::DumpCsv}},
    };
    std::size_t cells = 0, matches = 0, attempts = 0, line_ok = 0;
    std::ostringstream log;
    AuditLog audit(log);
    std::vector<std::string> expected_lines;
    for (auto role : kAllRoles) {
        for (auto action : kAllActions) {
            ++cells;
            const bool want = grid.at(role).count(action) == 1;
            matches += authorize(role, action).allowed == want;

            auto db = fixture();
            Session s(role, db, &audit);
            try {
                switch (action) {
                    case A::Query: s.query("SELECT Age FROM Actors"); break;
                    case A::Insert: s.insert("Platforms", {40, "Zee5"}); break;
                    case A::LoadCsv: {
                        std::istringstream in("Platform_id,Platform name\n41,Aha\n");
                        s.load_csv("Platforms", in);
                        break;
                    }
                    case A::CreateTable: s.create_table("CREATE TABLE Tags (Tag TEXT, PRIMARY KEY (Tag))"); break;
                    case A::DeleteRow: s.delete_row("Platforms", {12}); break;
                    case A::UpdateRow: s.update_row("Platforms", {12, "Renamed"}); break;
                    case A::DumpCsv: s.dump_csv("Platforms"); break;
                }
            } catch (const Error&) {
            }
            ++attempts;
            expected_lines.push_back(std::string(to_string(role)) + "\t" + std::string(to_string(action)) + "\t" +
                                     (want ? "allow" : "deny"));
        }
    }
    std::istringstream lines(log.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        if (n < expected_lines.size() && line.find("\t" + expected_lines[n] + "\t") != std::string::npos) ++line_ok;
        ++n;
    }
    const bool pass = matches == cells && cells == 21 && n == attempts && line_ok == attempts;
    return {pass, std::to_string(matches) + "/" + std::to_string(cells) + " cells, " + std::to_string(n) + " audit lines for " +
                      std::to_string(attempts) + " attempts, " + std::to_string(line_ok) + " as expected"};
}

// ---------------------------------------------------------------- 6

Database big_instance() {
    auto db = builtin_schema();
    std::uint64_t state = 6;
    const char* genres[] = {"Adventure", "Comedy", "Drama", "Thriller"};
    const std::int64_t shows = 10000, actors = 2000;
    for (std::int64_t a = 1; a <= actors; ++a) {
        insert(db, "Actors", {a, "Actor " + std::to_string(a), a % 2 ? "Male" : "Female", static_cast<std::int64_t>(20 + next_random(state) % 50),
                              "Nation " + std::to_string(a % 17)});
    }
    for (std::int64_t s = 1; s <= shows; ++s) {
        insert(db, "Collections_of_shows", {s, static_cast<std::int64_t>(1950 + s % 70), "Writer " + std::to_string(s % 300),
                                            genres[next_random(state) % 4]});
        insert(db, "Show_id-name", {s, "Show " + std::to_string(s)});
        insert(db, "Director", {s, "Director " + std::to_string(s % 500)});
        const auto pg = next_random(state) % 3;
        insert(db, "PG_Rating", {s, pg == 0, pg == 1, pg == 2});
    }
    std::int64_t junction = 0;
    while (junction < 20000) {
        const auto a = static_cast<std::int64_t>(1 + next_random(state) % actors);
        const auto s = static_cast<std::int64_t>(1 + next_random(state) % shows);
        if (db.table("Actor_id-Show_id").store.contains_key(Row{a, s})) continue;
        insert(db, "Actor_id-Show_id", {a, s});
        ++junction;
    }
    return db;
}

Verdict performance() {
    const auto db = big_instance();
    const auto bound = ottdb::bind(paper_query(6), db);
    const auto p = plan(bound);

    std::vector<double> runs;
    ResultSet engine;
    for (int i = 0; i < 3; ++i) {
        const auto start = Clock::now();
        engine = execute(db, p);
        runs.push_back(seconds_since(start));
    }
    std::sort(runs.begin(), runs.end());
    const double engine_t = runs[1];

    const auto budget = std::chrono::duration<double>(10 * engine_t);
    const auto start = Clock::now();
    std::string oracle_note;
    bool slow_enough = false;
    try {
        OracleLimits limits{start + std::chrono::duration_cast<Clock::duration>(budget)};
        auto reference = oracle(db, bound, limits);
        const double t = seconds_since(start);
        slow_enough = t >= 10 * engine_t;
        oracle_note = "oracle finished in " + fmt_seconds(t);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Timeout) throw;
        slow_enough = true;
        oracle_note = "oracle still running at the 10x deadline (" + fmt_seconds(seconds_since(start)) + ")";
    }
    return {engine_t < 1.0 && slow_enough, "engine " + fmt_seconds(engine_t) + " for " + std::to_string(engine.rows.size()) +
                                                " rows over " + std::to_string(db.total_rows()) + " stored rows; " + oracle_note};
}

// ---------------------------------------------------------------- 7

Verdict not_reproducible() {
    // The published Q1/Q4 figures come from a dataset we do not have; the
    // fixture deliberately does not imitate them. Confirm that, so nobody
    // mistakes a coincidence for a reproduction.
    const auto db = fixture();
    const auto q1 = run_query(db, paper_query(1));
    const bool uniform24 = std::all_of(q1.rows.begin(), q1.rows.end(), [](const Row& r) { return r[0] == Value(24); });
    const auto q4 = run_query(db, paper_query(4));
    bool eros = false;
    for (const auto& r : q4.rows) eros |= r[0] == Value("Eros Now") && r[1] == Value(23053);
    const bool pass = !q1.rows.empty() && !q4.rows.empty() && !uniform24 && !eros;
    return {pass, "Q1/Q4 run on the fixture (" + std::to_string(q1.rows.size()) + " and " + std::to_string(q4.rows.size()) +
                      " rows) without the published figures; covered by criteria 1 and 3"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"reference-query parse suite", parse_suite},
        {"fixture replay of Q2, Q3, Q5", fixture_replay},
        {"engine vs oracle differential", differential},
        {"integrity under random inserts and csv atomicity", integrity},
        {"role/action matrix and audit", rbac},
        {"Q6-shaped join performance", performance},
        {"Q1/Q4 published figures reported as not reproducible", not_reproducible},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

#include "ottdb/access.hpp"

#include "ottdb/plan.hpp"
#include "ottdb/sql.hpp"
#include "ottdb/storage.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

namespace ottdb {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::Client: return "client";
        case Role::Contributor: return "contributor";
        case Role::Admin: return "admin";
    }
    return "unknown";
}

std::string_view to_string(Action action) {
    switch (action) {
        case Action::Query: return "query";
        case Action::Insert: return "insert";
        case Action::LoadCsv: return "load_csv";
        case Action::CreateTable: return "create_table";
        case Action::DeleteRow: return "delete_row";
        case Action::UpdateRow: return "update_row";
        case Action::DumpCsv: return "dump_csv";
    }
    return "unknown";
}

std::optional<Role> parse_role(std::string_view text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    for (auto r : kAllRoles) {
        if (to_string(r) == lower) return r;
    }
    return std::nullopt;
}

Decision authorize(Role role, Action action) {
    bool allowed = false;
    switch (role) {
        case Role::Admin: allowed = true; break;
        case Role::Contributor:
            allowed = action == Action::Query || action == Action::DumpCsv || action == Action::Insert ||
                      action == Action::LoadCsv;
            break;
        case Role::Client: allowed = action == Action::Query || action == Action::DumpCsv; break;
    }
    Decision d;
    d.allowed = allowed;
    d.reason = std::string(to_string(role)) + (allowed ? " may " : " may not ") + std::string(to_string(action));
    return d;
}

std::unique_ptr<AuditLog> AuditLog::open(const std::string& path) {
    auto file = std::make_unique<std::ofstream>(path, std::ios::app);
    if (!*file) throw Error(ErrorCode::IoError, "cannot open audit log " + path);
    auto log = std::make_unique<AuditLog>(*file);
    log->file_ = std::move(file);
    return log;
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

// keep one record per line
std::string flatten(std::string_view text) {
    std::string s(text);
    for (char& c : s) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return s;
}

}  // namespace

void AuditLog::record(Role role, Action action, const Decision& decision, std::string_view detail) {
    ++count_;
    if (!out_) return;
    *out_ << utc_timestamp() << '\t' << to_string(role) << '\t' << to_string(action) << '\t'
          << (decision.allowed ? "allow" : "deny") << '\t' << flatten(detail) << '\n';
    out_->flush();
}

void Session::require(Action action, std::string_view detail) {
    Decision d = authorize(role_, action);
    if (audit_) audit_->record(role_, action, d, detail);
    if (!d.allowed) throw Error(ErrorCode::AuthorizationDenied, "permission denied: " + d.reason);
}

ResultSet Session::query(std::string_view sql) {
    require(Action::Query, sql);
    return run_query(db_, sql);
}

std::string Session::explain(std::string_view sql) {
    require(Action::Query, sql);
    return ottdb::explain(plan(bind(sql, db_)));
}

std::string Session::parse_only(std::string_view sql) {
    require(Action::Query, sql);
    return sql::to_debug_string(sql::parse(sql));
}

std::vector<Violation> Session::check() {
    require(Action::Query, "integrity check");
    return check_integrity(db_);
}

std::size_t Session::insert(std::string_view table, Row row) {
    require(Action::Insert, table);
    return ottdb::insert(db_, table, std::move(row));
}

std::size_t Session::load_csv(std::string_view table, std::istream& in) {
    require(Action::LoadCsv, table);
    return ottdb::load_csv(db_, table, in);
}

std::vector<std::pair<std::string, std::size_t>> Session::load_dataset(const std::string& dir) {
    require(Action::LoadCsv, dir);
    Database backup = db_;
    try {
        return ottdb::load_dataset(db_, dir);
    } catch (...) {
        db_ = std::move(backup);
        throw;
    }
}

void Session::create_table(std::string_view ddl) {
    require(Action::CreateTable, ddl);
    db_.add_table(sql::parse_create_table(ddl));
}

void Session::delete_row(std::string_view table, const Row& key) {
    require(Action::DeleteRow, table);
    ottdb::delete_row(db_, table, key);
}

void Session::update_row(std::string_view table, Row row) {
    require(Action::UpdateRow, table);
    ottdb::update_row(db_, table, std::move(row));
}

std::string Session::dump_csv(std::string_view table) {
    require(Action::DumpCsv, table);
    return ottdb::dump_csv(db_, table);
}

std::size_t Session::insert_text(std::string_view table, const std::vector<std::string>& assignments) {
    require(Action::Insert, table);
    return ottdb::insert(db_, table, parse_assignments(db_, table, assignments));
}

void Session::update_text(std::string_view table, const std::vector<std::string>& assignments) {
    require(Action::UpdateRow, table);
    ottdb::update_row(db_, table, parse_assignments(db_, table, assignments));
}

void Session::delete_text(std::string_view table, const std::vector<std::string>& key) {
    require(Action::DeleteRow, table);
    ottdb::delete_row(db_, table, parse_key(db_, table, key));
}

namespace {

Row parse_columns(const Database& db, std::string_view table, const std::vector<std::string>& assignments,
                  const std::vector<std::size_t>& wanted) {
    const Table& t = db.table(table);
    std::vector<std::optional<Value>> values(t.def.columns.size());
    for (const auto& a : assignments) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidLiteral, "expected column=value, got \"" + a + "\"");
        const std::string name = a.substr(0, eq);
        auto idx = t.def.column_index(name);
        if (!idx) throw Error(ErrorCode::UnknownColumn, "unknown column " + quote_identifier(name) + " in " + quote_identifier(table));
        bool is_wanted = false;
        for (auto w : wanted) is_wanted = is_wanted || w == *idx;
        if (!is_wanted) throw Error(ErrorCode::UnknownColumn, quote_identifier(name) + " is not a key column of " + quote_identifier(table));
        const auto& col = t.def.columns[*idx];
        auto v = Value::parse(col.type, a.substr(eq + 1));
        if (!v) {
            throw Error(ErrorCode::TypeMismatch,
                        "\"" + a.substr(eq + 1) + "\" is not " + std::string(to_string(col.type)) + " for " + col.name);
        }
        values[*idx] = std::move(*v);
    }
    Row row;
    std::string missing;
    for (auto w : wanted) {
        if (!values[w]) {
            missing += (missing.empty() ? "" : ", ") + quote_identifier(t.def.columns[w].name);
            continue;
        }
        row.push_back(std::move(*values[w]));
    }
    if (!missing.empty()) throw Error(ErrorCode::ArityMismatch, "missing value for " + missing);
    return row;
}

}  // namespace

Row parse_assignments(const Database& db, std::string_view table, const std::vector<std::string>& assignments) {
    const Table& t = db.table(table);
    std::vector<std::size_t> all(t.def.columns.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return parse_columns(db, table, assignments, all);
}

Row parse_key(const Database& db, std::string_view table, const std::vector<std::string>& assignments) {
    return parse_columns(db, table, assignments, db.table(table).pk_columns);
}

}  // namespace ottdb

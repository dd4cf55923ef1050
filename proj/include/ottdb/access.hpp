#pragma once

#include "ottdb/catalog.hpp"
#include "ottdb/executor.hpp"
#include "ottdb/result_set.hpp"

#include <array>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ottdb {

/// Ordered by privilege.
enum class Role { Client = 0, Contributor = 1, Admin = 2 };

enum class Action { Query, Insert, LoadCsv, CreateTable, DeleteRow, UpdateRow, DumpCsv };

inline constexpr std::array<Role, 3> kAllRoles = {Role::Client, Role::Contributor, Role::Admin};
inline constexpr std::array<Action, 7> kAllActions = {Action::Query,     Action::Insert,    Action::LoadCsv, Action::CreateTable,
                                                      Action::DeleteRow, Action::UpdateRow, Action::DumpCsv};

std::string_view to_string(Role role);
std::string_view to_string(Action action);
std::optional<Role> parse_role(std::string_view text);

struct Decision {
    bool allowed = false;
    std::string reason;
};

/// Client: Query, DumpCsv. Contributor adds Insert, LoadCsv. Admin: everything.
Decision authorize(Role role, Action action);

/// One line per authorization: timestamp, role, action, verdict, detail (tab separated).
class AuditLog {
public:
    AuditLog() = default;
    explicit AuditLog(std::ostream& out) : out_(&out) {}
    /// Appends to `path`; throws IoError if it cannot be opened.
    static std::unique_ptr<AuditLog> open(const std::string& path);

    void record(Role role, Action action, const Decision& decision, std::string_view detail);
    std::size_t count() const { return count_; }

private:
    std::ostream* out_ = nullptr;
    std::unique_ptr<std::ofstream> file_;
    std::size_t count_ = 0;
};

/// Parses "column=value" assignments for a full row of `table`, using the
/// canonical text form of each column type. Throws UnknownColumn, TypeMismatch,
/// ArityMismatch.
Row parse_assignments(const Database& db, std::string_view table, const std::vector<std::string>& assignments);

/// Primary-key-only form of parse_assignments.
Row parse_key(const Database& db, std::string_view table, const std::vector<std::string>& assignments);

/// A role bound to a database. Every public operation authorizes exactly once
/// and throws AuthorizationDenied when refused.
class Session {
public:
    Session(Role role, Database& db, AuditLog* audit = nullptr) : role_(role), db_(db), audit_(audit) {}

    Role role() const { return role_; }
    const Database& database() const { return db_; }

    ResultSet query(std::string_view sql);
    std::string explain(std::string_view sql);
    std::string parse_only(std::string_view sql);
    std::vector<Violation> check();

    std::size_t insert(std::string_view table, Row row);
    std::size_t load_csv(std::string_view table, std::istream& in);
    /// All tables in the manifest, or none.
    std::vector<std::pair<std::string, std::size_t>> load_dataset(const std::string& dir);
    void create_table(std::string_view ddl);
    /// Fails with RestrictViolation while other rows still reference the key.
    void delete_row(std::string_view table, const Row& key);
    /// Replaces the row with the same primary key.
    void update_row(std::string_view table, Row row);
    std::string dump_csv(std::string_view table);

    /// Same operations with "column=value" arguments, parsed after authorization.
    std::size_t insert_text(std::string_view table, const std::vector<std::string>& assignments);
    void update_text(std::string_view table, const std::vector<std::string>& assignments);
    void delete_text(std::string_view table, const std::vector<std::string>& key);

private:
    void require(Action action, std::string_view detail);

    Role role_;
    Database& db_;
    AuditLog* audit_;
};

}  // namespace ottdb

#include "ottdb/cli.hpp"

#include "ottdb/access.hpp"
#include "ottdb/catalog.hpp"
#include "ottdb/paper_queries.hpp"
#include "ottdb/sql.hpp"
#include "ottdb/storage.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace ottdb {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kQueryError = 1;
constexpr int kIntegrityError = 2;
constexpr int kIoError = 3;

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError: return kIoError;
        case ErrorCode::UnterminatedString:
        case ErrorCode::UnterminatedQuotedIdentifier:
        case ErrorCode::UnknownCharacter:
        case ErrorCode::UnexpectedToken:
        case ErrorCode::TrailingInput:
        case ErrorCode::InvalidLiteral:
        case ErrorCode::AmbiguousColumn:
        case ErrorCode::UngroupedColumn:
        case ErrorCode::DuplicateAlias:
        case ErrorCode::UnsupportedJoin:
        case ErrorCode::ArithmeticOverflow:
        case ErrorCode::Timeout:
        case ErrorCode::UnknownTable:
        case ErrorCode::UnknownColumn: return kQueryError;
        default: return kIntegrityError;
    }
}

// Tables created at runtime are remembered as one DDL statement per line so a
// dataset directory can be reopened with them.
constexpr const char* kDdlFile = "ddl.sql";

std::string one_line(std::string_view text) {
    std::string s(text);
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Context {
    Database db = builtin_schema();
    std::unique_ptr<AuditLog> audit;
    std::unique_ptr<Session> session;
    std::vector<std::string> ddl;
    std::string dataset;
    bool csv = false;
    std::ostream* out = nullptr;

    void open(Role role, const std::string& dir, bool must_exist) {
        dataset = dir;
        if (!dir.empty()) {
            const fs::path root(dir);
            if (fs::exists(root / "manifest.txt")) {
                if (fs::exists(root / kDdlFile)) {
                    std::istringstream lines(read_file((root / kDdlFile).string()));
                    std::string line;
                    while (std::getline(lines, line)) {
                        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                        db.add_table(sql::parse_create_table(line));
                        ddl.push_back(line);
                    }
                }
                // opening the session's own database is not an audited action
                load_dataset(db, dir);
            } else if (must_exist) {
                throw Error(ErrorCode::IoError, "no dataset at " + dir + " (missing manifest.txt)");
            }
        }
        session = std::make_unique<Session>(role, db, audit.get());
    }

    void persist() {
        if (dataset.empty()) return;
        save_dataset(db, dataset);
        const fs::path file = fs::path(dataset) / kDdlFile;
        if (ddl.empty()) {
            std::error_code ec;
            fs::remove(file, ec);
            return;
        }
        std::ofstream f(file, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + file.string());
        for (const auto& line : ddl) f << line << '\n';
    }

    void print(const ResultSet& rs) const { *out << (csv ? rs.to_csv() : rs.to_table()); }

    void run_sql(const std::string& text) { print(session->query(text)); }

    void create_table(const std::string& text) {
        session->create_table(text);
        ddl.push_back(one_line(text));
        persist();
    }
};

std::string sql_argument(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
    return arg;
}

int paper_query_number(const std::string& text) {
    int n = 0;
    if (text.size() == 1 && text[0] >= '1' && text[0] <= '6') n = text[0] - '0';
    if (n == 0) throw Error(ErrorCode::InvalidLiteral, "reference query number must be 1..6, got \"" + text + "\"");
    return n;
}

void print_violations(const std::vector<Violation>& violations, const Database& db, std::ostream& out) {
    if (violations.empty()) {
        out << "ok: " << db.table_count() << " tables, " << db.total_rows() << " rows, no violations\n";
        return;
    }
    for (const auto& v : violations) out << v.message() << '\n';
    out << violations.size() << (violations.size() == 1 ? " violation\n" : " violations\n");
}

void repl_help(std::ostream& out) {
    out << "Statements end with ';' and may span lines.\n"
           ".explain <sql>      show the plan\n"
           ".paperq <1..6>      run a reference query\n"
           ".format table|csv   switch output format\n"
           ".tables             list tables and row counts\n"
           ".schema             print the catalog\n"
           ".check              integrity report\n"
           ".dump <table>       table as CSV\n"
           ".history            statements entered so far\n"
           ".quit\n";
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

int repl(Context& ctx, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
    std::vector<std::string> history;
    std::string pending;
    std::string line;
    auto prompt = [&] {
        if (interactive) out << (pending.empty() ? "ottdb> " : "  ...> ") << std::flush;
    };
    auto report = [&](const Error& e) { err << "error: " << to_string(e.code()) << ": " << e.what() << '\n'; };

    prompt();
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (pending.empty() && !t.empty() && t[0] == '.') {
            history.push_back(t);
            std::istringstream words(t);
            std::string cmd;
            words >> cmd;
            std::string rest;
            std::getline(words, rest);
            rest = trim(rest);
            try {
                if (cmd == ".quit" || cmd == ".exit") {
                    break;
                } else if (cmd == ".help") {
                    repl_help(out);
                } else if (cmd == ".history") {
                    for (std::size_t i = 0; i < history.size(); ++i) out << (i + 1) << "  " << history[i] << '\n';
                } else if (cmd == ".format") {
                    if (rest == "table" || rest == "csv") {
                        ctx.csv = rest == "csv";
                    } else {
                        err << "error: format must be table or csv\n";
                    }
                } else if (cmd == ".explain") {
                    out << ctx.session->explain(rest);
                } else if (cmd == ".paperq") {
                    ctx.run_sql(std::string(paper_query(paper_query_number(rest))));
                } else if (cmd == ".tables") {
                    for (const auto& tbl : ctx.db.tables()) out << tbl.def.name << "  " << tbl.store.size() << '\n';
                } else if (cmd == ".schema") {
                    out << schema_dump(ctx.db);
                } else if (cmd == ".check") {
                    print_violations(ctx.session->check(), ctx.db, out);
                } else if (cmd == ".dump") {
                    out << ctx.session->dump_csv(rest);
                } else {
                    err << "error: unknown command " << cmd << " (try .help)\n";
                }
            } catch (const Error& e) {
                report(e);
            }
            prompt();
            continue;
        }

        if (!pending.empty()) pending += '\n';
        pending += line;
        if (!t.empty() && t.back() == ';') {
            const std::string statement = trim(pending);
            pending.clear();
            history.push_back(one_line(statement));
            try {
                std::string upper;
                for (char c : statement.substr(0, 6)) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                if (upper == "CREATE") {
                    ctx.create_table(statement);
                    out << "created\n";
                } else {
                    ctx.run_sql(statement);
                }
            } catch (const Error& e) {
                report(e);
            }
        } else if (trim(pending).empty()) {
            pending.clear();
        }
        prompt();
    }
    if (interactive) out << '\n';
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"ottdb: embedded OTT catalog database", "ottdb"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string role_text = "client";
    std::string format = "table";
    std::string dataset;
    std::string audit_path;
    app.add_option("--role", role_text, "client, contributor or admin")->capture_default_str();
    app.add_option("--format", format, "table or csv")->check(CLI::IsMember({"table", "csv"}))->capture_default_str();
    app.add_option("--dataset", dataset, "dataset directory (manifest.txt plus CSVs)");
    app.add_option("--audit", audit_path, "append authorization decisions to this file");

    std::string dir, sql_text, table, ddl;
    int paper_number = 0;
    bool parse_only = false;
    std::vector<std::string> assignments;

    auto* load = app.add_subcommand("load", "load a dataset directory in manifest order");
    load->add_option("dir", dir)->required();
    auto* query = app.add_subcommand("query", "run a query (text or @file)");
    query->add_option("sql", sql_text)->required();
    query->add_flag("--parse-only", parse_only, "print the syntax tree instead of running");
    app.add_subcommand("repl", "interactive statements terminated by ';'");
    auto* paperq = app.add_subcommand("paperq", "run one of the six reference queries");
    paperq->add_option("n", paper_number)->required()->check(CLI::Range(1, 6));
    auto* explain = app.add_subcommand("explain", "show the plan for a query");
    explain->add_option("sql", sql_text)->required();
    app.add_subcommand("check", "integrity report");
    auto* dump = app.add_subcommand("dump", "print a table as CSV");
    dump->add_option("table", table)->required();
    auto* insert = app.add_subcommand("insert", "insert one row: insert <table> col=value ...");
    insert->add_option("table", table)->required();
    insert->add_option("values", assignments)->required();
    auto* update = app.add_subcommand("update", "replace the row with the same key: update <table> col=value ...");
    update->add_option("table", table)->required();
    update->add_option("values", assignments)->required();
    auto* del = app.add_subcommand("delete", "delete by key: delete <table> keycol=value ...");
    del->add_option("table", table)->required();
    del->add_option("key", assignments)->required();
    auto* create = app.add_subcommand("create-table", "CREATE TABLE statement (text or @file)");
    create->add_option("ddl", ddl)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kQueryError;
    }

    auto role = parse_role(role_text);
    if (!role) {
        err << "error: unknown role \"" << role_text << "\" (client, contributor, admin)\n";
        return kQueryError;
    }

    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const bool mutating = name == "load" || name == "insert" || name == "create-table";

    Context ctx;
    ctx.csv = format == "csv";
    ctx.out = &out;
    try {
        if (!audit_path.empty()) ctx.audit = AuditLog::open(audit_path);
        ctx.open(*role, dataset, !mutating);

        if (name == "load") {
            for (const auto& [tbl, n] : ctx.session->load_dataset(dir)) out << "loaded " << n << " rows into " << tbl << '\n';
            ctx.persist();
        } else if (name == "query") {
            const std::string text = sql_argument(sql_text);
            if (parse_only) {
                out << ctx.session->parse_only(text);
            } else {
                ctx.run_sql(text);
            }
        } else if (name == "repl") {
            const bool interactive = &in == &std::cin && isatty(STDIN_FILENO);
            return repl(ctx, in, out, err, interactive);
        } else if (name == "paperq") {
            ctx.run_sql(std::string(paper_query(paper_number)));
        } else if (name == "explain") {
            out << ctx.session->explain(sql_argument(sql_text));
        } else if (name == "check") {
            auto violations = ctx.session->check();
            print_violations(violations, ctx.db, out);
            if (!violations.empty()) return kIntegrityError;
        } else if (name == "dump") {
            out << ctx.session->dump_csv(table);
        } else if (name == "insert") {
            ctx.session->insert_text(table, assignments);
            ctx.persist();
            out << "inserted 1 row into " << table << '\n';
        } else if (name == "update") {
            ctx.session->update_text(table, assignments);
            ctx.persist();
            out << "updated 1 row in " << table << '\n';
        } else if (name == "delete") {
            ctx.session->delete_text(table, assignments);
            ctx.persist();
            out << "deleted 1 row from " << table << '\n';
        } else if (name == "create-table") {
            ctx.create_table(sql_argument(ddl));
            out << "created table\n";
        }
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    }
    return kOk;
}

}  // namespace ottdb

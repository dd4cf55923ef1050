#include "ottdb/sql.hpp"

#include <cctype>
#include <sstream>

namespace ottdb::sql {

namespace {

std::string at(const SourcePos& pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

std::string describe(const Token& tok) {
    switch (tok.kind) {
        case TokenKind::Keyword: return tok.text;
        case TokenKind::Identifier: return "identifier " + tok.text;
        case TokenKind::QuotedIdentifier: return "identifier `" + tok.text + "`";
        case TokenKind::StringLiteral: return "string '" + tok.text + "'";
        case TokenKind::NumberLiteral: return "number " + tok.text;
        case TokenKind::Symbol: return "'" + tok.text + "'";
    }
    return tok.text;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

    QueryAst query() {
        QueryAst ast;
        expect_keyword("SELECT");
        ast.select_items.push_back(select_item());
        while (accept_symbol(",")) ast.select_items.push_back(select_item());

        expect_keyword("FROM");
        ast.from = table_ref();

        while (accept_keyword("JOIN")) {
            JoinClause join;
            join.table = table_ref();
            expect_keyword("ON");
            join.left = column_ref();
            expect_symbol("=");
            join.right = column_ref();
            ast.joins.push_back(std::move(join));
        }
        if (accept_keyword("WHERE")) {
            ast.where.push_back(predicate());
            while (accept_keyword("AND")) ast.where.push_back(predicate());
        }
        if (accept_keyword("GROUP")) {
            expect_keyword("BY");
            ast.group_by.push_back(column_ref());
            while (accept_symbol(",")) ast.group_by.push_back(column_ref());
        }
        if (accept_keyword("ORDER")) {
            expect_keyword("BY");
            ast.order_by.push_back(order_item());
            while (accept_symbol(",")) ast.order_by.push_back(order_item());
        }
        accept_symbol(";");
        if (!done()) {
            throw Error(ErrorCode::TrailingInput, at(peek().pos) + ": unexpected " + describe(peek()) + " after end of statement",
                        peek().pos);
        }
        return ast;
    }

    TableDef create_table() {
        expect_word("CREATE");
        expect_word("TABLE");
        TableDef def;
        def.name = name("table name").name;
        expect_symbol("(");
        do {
            if (accept_word("PRIMARY")) {
                expect_word("KEY");
                def.primary_key = name_list();
            } else if (accept_word("FOREIGN")) {
                expect_word("KEY");
                ForeignKey fk;
                fk.local_columns = name_list();
                expect_word("REFERENCES");
                fk.foreign_table = name("table name").name;
                fk.foreign_columns = name_list();
                def.foreign_keys.push_back(std::move(fk));
            } else {
                ColumnDef col;
                col.name = name("column name").name;
                const Token& type_tok = peek();
                if (type_tok.kind != TokenKind::Identifier) fail("column type");
                const std::string type = upper(type_tok.text);
                if (type == "INT" || type == "INTEGER") {
                    col.type = ColumnType::Int;
                } else if (type == "DECIMAL") {
                    col.type = ColumnType::Decimal;
                } else if (type == "TEXT") {
                    col.type = ColumnType::Text;
                } else if (type == "BOOL" || type == "BOOLEAN") {
                    col.type = ColumnType::Bool;
                } else {
                    fail("column type (INT, DECIMAL, TEXT, BOOL)");
                }
                ++i_;
                def.columns.push_back(std::move(col));
            }
        } while (accept_symbol(","));
        expect_symbol(")");
        accept_symbol(";");
        if (!done()) {
            throw Error(ErrorCode::TrailingInput, at(peek().pos) + ": unexpected " + describe(peek()) + " after end of statement",
                        peek().pos);
        }
        return def;
    }

private:
    bool done() const { return i_ >= toks_.size(); }

    const Token& peek() const {
        static const Token eof{};
        return done() ? eof : toks_[i_];
    }

    SourcePos end_pos() const {
        if (toks_.empty()) return SourcePos{};
        const Token& last = toks_.back();
        return SourcePos{last.pos.line, last.pos.column + last.length, last.pos.offset + last.length};
    }

    [[noreturn]] void fail(const std::string& expected) const {
        if (done()) {
            const SourcePos pos = end_pos();
            throw Error(ErrorCode::UnexpectedToken, at(pos) + ": expected " + expected + ", got end of input", pos);
        }
        throw Error(ErrorCode::UnexpectedToken, at(peek().pos) + ": expected " + expected + ", got " + describe(peek()),
                    peek().pos);
    }

    bool accept_keyword(std::string_view kw) {
        if (!done() && peek().is_keyword(kw)) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail(std::string(kw));
    }

    bool accept_symbol(std::string_view sym) {
        if (!done() && peek().is_symbol(sym)) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view sym) {
        if (!accept_symbol(sym)) fail("'" + std::string(sym) + "'");
    }

    // Contextual words of the DDL form, which are plain identifiers to the lexer.
    bool accept_word(std::string_view word) {
        if (!done() && peek().kind == TokenKind::Identifier && upper(peek().text) == word) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect_word(std::string_view word) {
        if (!accept_word(word)) fail(std::string(word));
    }

    Identifier name(const std::string& what) {
        const Token& tok = peek();
        if (done() || (tok.kind != TokenKind::Identifier && tok.kind != TokenKind::QuotedIdentifier)) fail(what);
        ++i_;
        return Identifier{tok.text, tok.kind == TokenKind::QuotedIdentifier, tok.pos};
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> names;
        expect_symbol("(");
        names.push_back(name("column name").name);
        while (accept_symbol(",")) names.push_back(name("column name").name);
        expect_symbol(")");
        return names;
    }

    ColumnRef column_ref() {
        ColumnRef ref;
        Identifier first = name("column reference");
        if (accept_symbol(".")) {
            ref.qualifier = std::move(first);
            ref.column = name("column name");
        } else {
            ref.column = std::move(first);
        }
        return ref;
    }

    Expr expr() {
        if (!done() && (peek().is_keyword("COUNT") || peek().is_keyword("SUM"))) {
            Aggregate agg;
            agg.pos = peek().pos;
            agg.func = peek().text == "COUNT" ? AggregateFunc::Count : AggregateFunc::Sum;
            ++i_;
            expect_symbol("(");
            agg.arg = column_ref();
            expect_symbol(")");
            return agg;
        }
        return column_ref();
    }

    SelectItem select_item() {
        SelectItem item{expr(), std::nullopt};
        if (accept_keyword("AS")) {
            const Token& tok = peek();
            // 'TOTAL' style string aliases are accepted alongside identifiers.
            if (done() || (tok.kind != TokenKind::Identifier && tok.kind != TokenKind::QuotedIdentifier &&
                           tok.kind != TokenKind::StringLiteral)) {
                fail("alias");
            }
            item.alias = tok.text;
            ++i_;
        }
        return item;
    }

    TableRef table_ref() {
        TableRef ref;
        ref.table = name("table name");
        const bool has_as = accept_keyword("AS");
        if (!done() && peek().kind == TokenKind::Identifier) {
            ref.alias = Identifier{peek().text, false, peek().pos};
            ++i_;
        } else if (has_as) {
            fail("alias");
        }
        return ref;
    }

    Literal literal() {
        const Token& tok = peek();
        if (tok.kind == TokenKind::StringLiteral) {
            ++i_;
            return Literal{Value(tok.text), "'" + tok.text + "'", tok.pos};
        }
        if (tok.kind == TokenKind::NumberLiteral) {
            ++i_;
            const bool is_decimal = tok.text.find('.') != std::string::npos;
            auto value = Value::parse(is_decimal ? ColumnType::Decimal : ColumnType::Int, tok.text);
            if (!value) throw Error(ErrorCode::InvalidLiteral, at(tok.pos) + ": number " + tok.text + " out of range", tok.pos);
            return Literal{*value, tok.text, tok.pos};
        }
        fail("literal or column reference");
    }

    Predicate predicate() {
        Predicate pred;
        pred.lhs = column_ref();
        const Token& op = peek();
        if (done() || op.kind != TokenKind::Symbol) fail("comparison operator");
        if (op.text == "=") pred.op = CompareOp::Eq;
        else if (op.text == "<>") pred.op = CompareOp::Ne;
        else if (op.text == "<") pred.op = CompareOp::Lt;
        else if (op.text == "<=") pred.op = CompareOp::Le;
        else if (op.text == ">") pred.op = CompareOp::Gt;
        else if (op.text == ">=") pred.op = CompareOp::Ge;
        else fail("comparison operator");
        ++i_;
        if (!done() && (peek().kind == TokenKind::Identifier || peek().kind == TokenKind::QuotedIdentifier)) {
            pred.rhs = column_ref();
        } else {
            pred.rhs = literal();
        }
        return pred;
    }

    OrderItem order_item() {
        OrderItem item{expr(), false};
        if (accept_keyword("DESC")) {
            item.descending = true;
        } else {
            accept_keyword("ASC");
        }
        return item;
    }

    std::span<const Token> toks_;
    std::size_t i_ = 0;
};

std::string ident_sql(const Identifier& id) { return id.quoted ? "`" + id.name + "`" : id.name; }

void write_column(std::ostream& out, const ColumnRef& ref) {
    out << "Column ";
    if (ref.qualifier) out << ident_sql(*ref.qualifier) << '.';
    out << ident_sql(ref.column);
}

void write_expr(std::ostream& out, const Expr& expr) {
    if (const auto* agg = std::get_if<Aggregate>(&expr)) {
        out << "Aggregate " << to_string(agg->func) << " (";
        write_column(out, agg->arg);
        out << ')';
    } else {
        write_column(out, std::get<ColumnRef>(expr));
    }
}

void write_table(std::ostream& out, const TableRef& ref) {
    out << ident_sql(ref.table);
    if (ref.alias) out << " AS " << ref.alias->name;
}

}  // namespace

std::string ColumnRef::to_sql() const {
    std::string out;
    if (qualifier) out = ident_sql(*qualifier) + ".";
    return out + ident_sql(column);
}

std::string_view to_string(AggregateFunc func) { return func == AggregateFunc::Count ? "COUNT" : "SUM"; }

std::string display_name(const Expr& expr) {
    if (const auto* agg = std::get_if<Aggregate>(&expr)) {
        std::string arg = agg->arg.qualifier ? agg->arg.qualifier->name + "." : "";
        return std::string(to_string(agg->func)) + "(" + arg + agg->arg.column.name + ")";
    }
    return std::get<ColumnRef>(expr).column.name;
}

std::string expr_to_sql(const Expr& expr) {
    if (const auto* agg = std::get_if<Aggregate>(&expr)) {
        return std::string(to_string(agg->func)) + "(" + agg->arg.to_sql() + ")";
    }
    return std::get<ColumnRef>(expr).to_sql();
}

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "<>";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

bool evaluate(CompareOp op, std::strong_ordering cmp) {
    switch (op) {
        case CompareOp::Eq: return cmp == 0;
        case CompareOp::Ne: return cmp != 0;
        case CompareOp::Lt: return cmp < 0;
        case CompareOp::Le: return cmp <= 0;
        case CompareOp::Gt: return cmp > 0;
        case CompareOp::Ge: return cmp >= 0;
    }
    return false;
}

QueryAst parse(std::span<const Token> tokens) { return Parser(tokens).query(); }

QueryAst parse(std::string_view text) {
    auto tokens = tokenize(text);
    return parse(tokens);
}

TableDef parse_create_table(std::string_view text) {
    auto tokens = tokenize(text);
    return Parser(tokens).create_table();
}

std::string to_debug_string(const QueryAst& ast) {
    std::ostringstream out;
    out << "Query\n";
    out << "  Select\n";
    for (const auto& item : ast.select_items) {
        out << "    ";
        write_expr(out, item.expr);
        if (item.alias) out << " AS \"" << *item.alias << '"';
        out << '\n';
    }
    out << "  From ";
    write_table(out, ast.from);
    out << '\n';
    for (const auto& join : ast.joins) {
        out << "  Join ";
        write_table(out, join.table);
        out << "\n    On ";
        write_column(out, join.left);
        out << " = ";
        write_column(out, join.right);
        out << '\n';
    }
    if (!ast.where.empty()) {
        out << "  Where\n";
        for (const auto& pred : ast.where) {
            out << "    ";
            write_column(out, pred.lhs);
            out << ' ' << to_string(pred.op) << ' ';
            if (const auto* lit = std::get_if<Literal>(&pred.rhs)) {
                out << (lit->value.is_text() ? "Text " : lit->value.is_int() ? "Int " : "Decimal ") << lit->text;
            } else {
                write_column(out, std::get<ColumnRef>(pred.rhs));
            }
            out << '\n';
        }
    }
    if (!ast.group_by.empty()) {
        out << "  GroupBy\n";
        for (const auto& col : ast.group_by) {
            out << "    ";
            write_column(out, col);
            out << '\n';
        }
    }
    if (!ast.order_by.empty()) {
        out << "  OrderBy\n";
        for (const auto& item : ast.order_by) {
            out << "    ";
            write_expr(out, item.expr);
            out << (item.descending ? " DESC" : " ASC") << '\n';
        }
    }
    return out.str();
}

}  // namespace ottdb::sql

#include "support.hpp"

#include "ottdb/bind.hpp"
#include "ottdb/oracle.hpp"
#include "ottdb/paper_queries.hpp"
#include "ottdb/sql.hpp"

#include <doctest.h>

using namespace ottdb;
using sql::TokenKind;

namespace {

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::IoError;
}

// Rebuilds the source from token spans plus whatever lies between them.
std::string rebuild(std::string_view text, const std::vector<sql::Token>& tokens) {
    std::string out;
    std::size_t at = 0;
    for (const auto& t : tokens) {
        out += text.substr(at, t.pos.offset - at);
        out += text.substr(t.pos.offset, t.length);
        at = t.pos.offset + t.length;
    }
    out += text.substr(at);
    return out;
}

}  // namespace

TEST_SUITE("sql") {
    TEST_CASE("tokenize the IMDB filter") {
        auto toks = sql::tokenize("WHERE `IMDB rating` = 10");
        REQUIRE(toks.size() == 4);
        CHECK(toks[0].kind == TokenKind::Keyword);
        CHECK(toks[0].text == "WHERE");
        CHECK(toks[1].kind == TokenKind::QuotedIdentifier);
        CHECK(toks[1].text == "IMDB rating");
        CHECK(toks[2].kind == TokenKind::Symbol);
        CHECK(toks[2].text == "=");
        CHECK(toks[3].kind == TokenKind::NumberLiteral);
        CHECK(toks[3].text == "10");
    }

    TEST_CASE("empty input and string literals") {
        CHECK(sql::tokenize("").empty());
        CHECK(sql::tokenize("  \n\t ").empty());
        auto toks = sql::tokenize("'S.S. Wilson'");
        REQUIRE(toks.size() == 1);
        CHECK(toks[0].kind == TokenKind::StringLiteral);
        CHECK(toks[0].text == "S.S. Wilson");
        CHECK(sql::tokenize("'O''Neil'")[0].text == "O'Neil");
    }

    TEST_CASE("keywords are case-insensitive, symbols and decimals") {
        auto toks = sql::tokenize("select Count ( x ) <= >= <> < > ; 7.25");
        CHECK(toks[0].is_keyword("SELECT"));
        CHECK(toks[1].is_keyword("COUNT"));
        for (std::size_t i = 5; i <= 10; ++i) CHECK(toks[i].kind == TokenKind::Symbol);
        CHECK(toks[5].text == "<=");
        CHECK(toks[7].text == "<>");
        CHECK(toks[11].kind == TokenKind::NumberLiteral);
        CHECK(toks[11].text == "7.25");
    }

    TEST_CASE("quoted identifiers keep odd characters") {
        auto toks = sql::tokenize("`Actor Oscar nominated(y/n)` `Show_id-name` `views/mo`");
        REQUIRE(toks.size() == 3);
        CHECK(toks[0].text == "Actor Oscar nominated(y/n)");
        CHECK(toks[1].text == "Show_id-name");
        CHECK(toks[2].text == "views/mo");
    }

    TEST_CASE("tokenizer errors carry positions") {
        try {
            sql::tokenize("SELECT\n  'open");
            FAIL("");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnterminatedString);
            CHECK(e.position()->line == 2);
            CHECK(e.position()->column == 3);
        }
        CHECK(error_of([] { sql::tokenize("`open"); }) == ErrorCode::UnterminatedQuotedIdentifier);
        CHECK(error_of([] { sql::tokenize("a # b"); }) == ErrorCode::UnknownCharacter);
    }

    TEST_CASE("token spans cover the whole input") {
        for (int n = 1; n <= 6; ++n) {
            const auto text = paper_query(n);
            CHECK(rebuild(text, sql::tokenize(text)) == text);
        }
        auto schema = builtin_schema();
        for (const auto& q : generate_queries(3, schema, 200)) CHECK(rebuild(q, sql::tokenize(q)) == q);
        // every byte outside a token is whitespace
        for (int n = 1; n <= 6; ++n) {
            const auto text = paper_query(n);
            std::vector<bool> covered(text.size());
            for (const auto& t : sql::tokenize(text)) {
                for (std::size_t i = 0; i < t.length; ++i) covered[t.pos.offset + i] = true;
            }
            for (std::size_t i = 0; i < text.size(); ++i) {
                if (!covered[i]) CHECK(std::isspace(static_cast<unsigned char>(text[i])));
            }
        }
    }

    TEST_CASE("Q1 shape") {
        auto ast = sql::parse(paper_query(1));
        REQUIRE(ast.select_items.size() == 2);
        auto* agg = std::get_if<sql::Aggregate>(&ast.select_items[0].expr);
        REQUIRE(agg);
        CHECK(agg->func == sql::AggregateFunc::Count);
        CHECK(agg->arg.column.name == "Actor_id");
        CHECK(std::get<sql::ColumnRef>(ast.select_items[1].expr).column.name == "Nationality");
        REQUIRE(ast.group_by.size() == 1);
        CHECK(ast.group_by[0].column.name == "Nationality");
        REQUIRE(ast.order_by.size() == 1);
        CHECK(ast.order_by[0].descending);
        CHECK(std::holds_alternative<sql::Aggregate>(ast.order_by[0].expr));
        CHECK(sql::display_name(ast.select_items[0].expr) == "COUNT(Actor_id)");
    }

    TEST_CASE("minimal query") {
        auto ast = sql::parse("SELECT x FROM t");
        CHECK(ast.select_items.size() == 1);
        CHECK(ast.from.table.name == "t");
        CHECK_FALSE(ast.from.alias);
        CHECK(ast.joins.empty());
        CHECK(ast.where.empty());
        CHECK(ast.group_by.empty());
        CHECK(ast.order_by.empty());
    }

    TEST_CASE("Q6 shape") {
        auto ast = sql::parse(paper_query(6));
        CHECK(ast.joins.size() == 5);
        CHECK(ast.where.size() == 4);
        CHECK(ast.select_items.size() == 5);
        CHECK(ast.order_by.size() == 1);
    }

    TEST_CASE("Q4 string alias") {
        auto ast = sql::parse(paper_query(4));
        REQUIRE(ast.select_items[1].alias);
        CHECK(*ast.select_items[1].alias == "TOTAL");
    }

    TEST_CASE("parse errors") {
        try {
            sql::parse("SELEC x");
            FAIL("");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnexpectedToken);
            CHECK(e.position()->line == 1);
            CHECK(e.position()->column == 1);
        }
        CHECK(error_of([] { sql::parse("SELECT x FROM t WHERE"); }) == ErrorCode::UnexpectedToken);
        CHECK(error_of([] { sql::parse("SELECT x FROM t; y"); }) == ErrorCode::TrailingInput);
        CHECK(error_of([] { sql::parse("SELECT x FROM t JOIN u ON a = 3"); }) == ErrorCode::UnexpectedToken);
        CHECK(error_of([] { sql::parse("SELECT x FROM t WHERE a = 1 OR b = 2"); }) == ErrorCode::TrailingInput);
        CHECK(error_of([] { sql::parse("SELECT x FROM t WHERE a = 99999999999999999999"); }) == ErrorCode::InvalidLiteral);
    }

    TEST_CASE("golden syntax trees") {
        for (int n = 1; n <= 6; ++n) {
            const auto golden = testing::slurp(testing::source_dir() / "tests" / "golden" / ("ast_q" + std::to_string(n) + ".txt"));
            const auto once = sql::to_debug_string(sql::parse(paper_query(n)));
            CHECK(once == golden);
            CHECK(sql::to_debug_string(sql::parse(paper_query(n))) == once);
        }
    }

    TEST_CASE("create table") {
        auto def = sql::parse_create_table(
            "CREATE TABLE `Show tags` (Show_id INT, Tag TEXT, Weight DECIMAL, Hidden BOOL, "
            "PRIMARY KEY (Show_id, Tag), FOREIGN KEY (Show_id) REFERENCES Collections_of_shows (Show_id));");
        CHECK(def.name == "Show tags");
        REQUIRE(def.columns.size() == 4);
        CHECK(def.columns[2].type == ColumnType::Decimal);
        CHECK(def.primary_key == std::vector<std::string>{"Show_id", "Tag"});
        REQUIRE(def.foreign_keys.size() == 1);
        CHECK(def.foreign_keys[0].foreign_table == "Collections_of_shows");
        CHECK(error_of([] { sql::parse_create_table("CREATE TABLE t (x FLOAT)"); }) == ErrorCode::UnexpectedToken);
    }
}

TEST_SUITE("bind") {
    TEST_CASE("all six reference queries bind") {
        auto db = builtin_schema();
        for (int n = 1; n <= 6; ++n) CHECK_NOTHROW(ottdb::bind(paper_query(n), db));
    }

    TEST_CASE("Q6 bare Age binds to Actors") {
        auto db = builtin_schema();
        auto q = ottdb::bind(paper_query(6), db);
        REQUIRE(q.where.size() == 4);
        const auto& age = q.where[0].lhs;
        CHECK(q.scope[age.scope].table_name == "Actors");
        CHECK(db.table_at(q.scope[age.scope].table).def.columns[age.column].name == "Age");
        CHECK(q.scope[q.where[2].lhs.scope].table_name == "PG_Rating");
    }

    TEST_CASE("Q2 quoted names fall back to case-insensitive match") {
        auto db = builtin_schema();
        auto q = ottdb::bind(paper_query(2), db);
        CHECK(q.headers() == std::vector<std::string>{"show name", "IMDB rating"});
    }

    TEST_CASE("headers") {
        auto db = builtin_schema();
        CHECK(ottdb::bind(paper_query(1), db).headers() == std::vector<std::string>{"COUNT(Actor_id)", "Nationality"});
        CHECK(ottdb::bind(paper_query(4), db).headers() == std::vector<std::string>{"Platform name", "TOTAL"});
        CHECK(ottdb::bind(paper_query(5), db).headers() ==
              std::vector<std::string>{"Show_id", "Show Name", "Production_Name", "Seasons", "Episodes"});
    }

    TEST_CASE("binding errors") {
        auto db = builtin_schema();
        CHECK(error_of([&] {
                  ottdb::bind("SELECT Show_id FROM `Show_id-name` a JOIN Critics_Rating b ON a.Show_id = b.Show_id", db);
              }) == ErrorCode::AmbiguousColumn);
        CHECK(error_of([&] { ottdb::bind("SELECT COUNT(Actor_id), Nationality FROM Actors", db); }) == ErrorCode::UngroupedColumn);
        CHECK(error_of([&] { ottdb::bind("SELECT Gender, COUNT(Actor_id) FROM Actors GROUP BY Nationality", db); }) ==
              ErrorCode::UngroupedColumn);
        CHECK(error_of([&] { ottdb::bind("SELECT x FROM Nowhere", db); }) == ErrorCode::UnknownTable);
        CHECK(error_of([&] { ottdb::bind("SELECT Height FROM Actors", db); }) == ErrorCode::UnknownColumn);
        CHECK(error_of([&] { ottdb::bind("SELECT z.Age FROM Actors a", db); }) == ErrorCode::UnknownTable);
        CHECK(error_of([&] { ottdb::bind("SELECT a.Age FROM Actors a JOIN Actors a ON a.Actor_id = a.Actor_id", db); }) ==
              ErrorCode::DuplicateAlias);
        CHECK(error_of([&] { ottdb::bind("SELECT Age FROM Actors WHERE Gender = 3", db); }) == ErrorCode::TypeMismatch);
        CHECK(error_of([&] { ottdb::bind("SELECT SUM(Gender) FROM Actors", db); }) == ErrorCode::TypeMismatch);
    }

    TEST_CASE("unquoted identifiers ignore case, quoted ones prefer exact") {
        auto db = builtin_schema();
        CHECK_NOTHROW(ottdb::bind("select AGE from actors", db));
        CHECK_NOTHROW(ottdb::bind("SELECT `Age` FROM `Actors`", db));
    }

    TEST_CASE("whole-table aggregate needs no GROUP BY") {
        auto db = builtin_schema();
        auto q = ottdb::bind("SELECT COUNT(Actor_id), SUM(Age) FROM Actors", db);
        CHECK(q.grouped);
        CHECK(q.group_by.empty());
    }
}

#include "support.hpp"

#include "ottdb/catalog.hpp"
#include "ottdb/storage.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace ottdb;

TEST_SUITE("value") {
    TEST_CASE("decimal parse and shortest form") {
        CHECK(Decimal::parse("10")->to_string() == "10");
        CHECK(Decimal::parse("10.0")->to_string() == "10");
        CHECK(Decimal::parse("7.50")->to_string() == "7.5");
        CHECK(Decimal::parse("-0.25")->to_string() == "-0.25");
        CHECK_FALSE(Decimal::parse("1.2345678"));
        CHECK_FALSE(Decimal::parse("abc"));
        CHECK_FALSE(Decimal::parse(""));
    }

    TEST_CASE("int and decimal compare numerically") {
        CHECK(Value(10) == Value(*Decimal::parse("10.0")));
        CHECK(Value(*Decimal::parse("9.99")) < Value(10));
        CHECK(Value(true) == Value(1));
        CHECK_FALSE(identical(Value(10), Value(*Decimal::parse("10"))));
        CHECK(ValueHash{}(Value(10)) == ValueHash{}(Value(*Decimal::parse("10"))));
    }

    TEST_CASE("text sorts after numbers and compares bytewise") {
        CHECK(Value(1000000) < Value("0"));
        CHECK(Value("S.S. Wilson") != Value("s.s. wilson"));
        CHECK(Value("Adventure") < Value("Drama"));
    }

    TEST_CASE("canonical text forms") {
        CHECK(Value(true).to_string() == "1");
        CHECK(Value(false).to_string() == "0");
        CHECK(Value::parse(ColumnType::Bool, "1")->as_bool());
        CHECK_FALSE(Value::parse(ColumnType::Bool, "true"));
        CHECK_FALSE(Value::parse(ColumnType::Int, "old"));
        CHECK(Value::parse(ColumnType::Int, "-42")->as_int() == -42);
        CHECK(Value::parse(ColumnType::Text, "")->as_text().empty());
    }
}

namespace {

Violation verdict(const Database& db, std::string_view table, const Row& row) {
    auto v = validate_row(db, table, row);
    REQUIRE(v.has_value());
    return *v;
}

}  // namespace

TEST_SUITE("catalog") {
    TEST_CASE("builtin schema has the 26 tables") {
        auto db = builtin_schema();
        CHECK(db.table_count() == 26);
        for (const char* name : {"Collections_of_shows", "Show_id-name", "Actors", "Actor_id-Show_id", "Production_id-Show_id",
                                 "Productions", "Critics_Rating", "PG_Rating", "Platform_id-Show_id", "Platforms",
                                 "Subscriptions", "Availability", "Relevance", "Duration", "Resolution", "TV_series",
                                 "Subtitles", "Ongoing", "Director", "Related_shows", "Inspiration", "Nominations", "Budget",
                                 "Statistics", "Best_of_year", "Actor_nomination"}) {
            CHECK_MESSAGE(db.find_table(name) != nullptr, name);
        }
        CHECK(db.total_rows() == 0);
    }

    TEST_CASE("TV_series columns") {
        auto db = builtin_schema();
        std::vector<std::string> names;
        for (const auto& c : db.table("TV_series").def.columns) names.push_back(c.name);
        CHECK(names == std::vector<std::string>{"Show_id", "Production_id", "Duration", "Seasons", "Episodes"});
    }

    TEST_CASE("every non-root table reaches the hub through foreign keys") {
        auto db = builtin_schema();
        const auto hub = *db.table_index("Collections_of_shows");
        const std::set<std::string> roots = {"Actors", "Productions", "Platforms", "Actor_nomination"};
        for (std::size_t i = 0; i < db.table_count(); ++i) {
            const auto& name = db.table_at(i).def.name;
            if (i == hub || roots.count(name)) continue;
            std::set<std::size_t> seen{i};
            std::vector<std::size_t> frontier{i};
            bool reached = false;
            while (!frontier.empty() && !reached) {
                auto t = frontier.back();
                frontier.pop_back();
                for (const auto& fk : db.table_at(t).foreign_keys) {
                    if (fk.foreign_table == hub) reached = true;
                    if (seen.insert(fk.foreign_table).second) frontier.push_back(fk.foreign_table);
                }
            }
            CHECK_MESSAGE(reached, name);
        }
    }

    TEST_CASE("foreign keys target primary keys") {
        auto db = builtin_schema();
        for (const auto& t : db.tables()) {
            for (const auto& fk : t.def.foreign_keys) {
                const auto& parent = db.table(fk.foreign_table).def;
                CHECK(fk.local_columns.size() == fk.foreign_columns.size());
                std::multiset<std::string> a(fk.foreign_columns.begin(), fk.foreign_columns.end());
                std::multiset<std::string> b(parent.primary_key.begin(), parent.primary_key.end());
                CHECK_MESSAGE(a == b, t.def.name << " " << fk.describe());
            }
        }
    }

    TEST_CASE("validate_row examples") {
        auto db = builtin_schema();
        CHECK(verdict(db, "Show_id-name", {1, "For the Love of Ada"}).code == ErrorCode::ForeignKeyViolation);

        insert(db, "Collections_of_shows", {1, 1974, "S.S. Wilson", "Comedy"});
        CHECK_FALSE(validate_row(db, "Show_id-name", {1, "For the Love of Ada"}));

        auto v = verdict(db, "Actors", {1, "Tom Baker", "Male", "old", "UK"});
        CHECK(v.code == ErrorCode::TypeMismatch);
        CHECK(v.message().find("Age") != std::string::npos);

        CHECK(verdict(db, "Actors", {1, "Tom Baker"}).code == ErrorCode::ArityMismatch);
        CHECK(verdict(db, "Collections_of_shows", {1, 1988, "S.S. Wilson", "Comedy"}).code == ErrorCode::DuplicateKey);
        CHECK(verdict(db, "Nope", {1}).code == ErrorCode::UnknownTable);
    }

    TEST_CASE("PG rating bands are exclusive") {
        auto db = builtin_schema();
        insert(db, "Collections_of_shows", {1, 1974, "S.S. Wilson", "Comedy"});
        CHECK(verdict(db, "PG_Rating", {1, true, true, false}).code == ErrorCode::CheckViolation);
        CHECK(verdict(db, "PG_Rating", {1, false, false, false}).code == ErrorCode::CheckViolation);
        CHECK_FALSE(validate_row(db, "PG_Rating", {1, false, true, false}));
    }

    TEST_CASE("resolution requires a subscription") {
        auto db = builtin_schema();
        insert(db, "Collections_of_shows", {1, 1974, "S.S. Wilson", "Comedy"});
        insert(db, "Platforms", {5, "Netflix"});
        CHECK(verdict(db, "Resolution", {5, 1, "4K", true}).code == ErrorCode::ForeignKeyViolation);
        insert(db, "Subscriptions", {5, 1, false});
        CHECK_FALSE(validate_row(db, "Resolution", {5, 1, "4K", true}));
    }

    TEST_CASE("check_integrity") {
        auto db = builtin_schema();
        CHECK(check_integrity(db).empty());

        insert(db, "Platforms", {1, "Eros Now"});
        insert(db, "Collections_of_shows", {1, 1974, "S.S. Wilson", "Comedy"});
        db.insert_unchecked("Statistics", {99, 1, 100});
        auto violations = check_integrity(db);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].code == ErrorCode::ForeignKeyViolation);
        CHECK(violations[0].table == "Statistics");
        CHECK(violations[0].row_key.find("99") != std::string::npos);
    }

    TEST_CASE("fixture is consistent and matches an independent recount") {
        auto db = testing::fixture_db();
        CHECK(check_integrity(db).empty());

        // recount straight from the CSV text: every Show_id cell in a child file
        // must appear in the hub file
        const auto dir = testing::source_dir() / "fixtures" / "paper";
        std::set<std::string> hub_ids;
        {
            std::istringstream in(testing::slurp(dir / "Collections_of_shows.csv"));
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line)) hub_ids.insert(line.substr(0, line.find(',')));
        }
        CHECK(hub_ids.size() == db.table("Collections_of_shows").store.size());
        for (const char* file : {"Show_id-name.csv", "Critics_Rating.csv", "TV_series.csv", "PG_Rating.csv", "Director.csv"}) {
            std::istringstream in(testing::slurp(dir / file));
            std::string line;
            std::getline(in, line);
            std::size_t rows = 0;
            while (std::getline(in, line)) {
                ++rows;
                CHECK_MESSAGE(hub_ids.count(line.substr(0, line.find(','))) == 1, file << ": " << line);
            }
            CHECK(rows <= 50);
        }
    }

    TEST_CASE("add_table rejects bad definitions") {
        auto db = builtin_schema();
        TableDef dup;
        dup.name = "Actors";
        dup.columns = {{"x", ColumnType::Int}};
        dup.primary_key = {"x"};
        CHECK_THROWS_AS(db.add_table(dup), Error);

        TableDef no_parent;
        no_parent.name = "Extra";
        no_parent.columns = {{"x", ColumnType::Int}};
        no_parent.primary_key = {"x"};
        no_parent.foreign_keys = {{{"x"}, "Missing", {"id"}}};
        CHECK_THROWS_AS(db.add_table(no_parent), Error);

        TableDef repeated;
        repeated.name = "Extra";
        repeated.columns = {{"x", ColumnType::Int}, {"x", ColumnType::Text}};
        repeated.primary_key = {"x"};
        CHECK_THROWS_AS(db.add_table(repeated), Error);
        CHECK(db.table_count() == 26);
    }

    TEST_CASE("load order puts parents first") {
        auto db = builtin_schema();
        std::map<std::size_t, std::size_t> position;
        auto order = db.load_order();
        for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
        for (std::size_t t = 0; t < db.table_count(); ++t) {
            for (const auto& fk : db.table_at(t).foreign_keys) CHECK(position[fk.foreign_table] < position[t]);
        }
    }

    TEST_CASE("schema dump matches golden") {
        const auto golden = testing::slurp(testing::source_dir() / "tests" / "golden" / "schema.txt");
        CHECK(schema_dump(builtin_schema()) == golden);
    }
}

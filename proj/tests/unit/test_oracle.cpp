#include "support.hpp"

#include "ottdb/executor.hpp"
#include "ottdb/oracle.hpp"
#include "ottdb/paper_queries.hpp"

#include <doctest.h>

using namespace ottdb;

namespace {

Row row_of(std::initializer_list<Value> v) { return Row(v); }

ResultSet oracle_of(const Database& db, std::string_view q) { return oracle(db, ottdb::bind(q, db)); }

Database small_db() {
    auto db = builtin_schema();
    insert(db, "Collections_of_shows", {1, 1974, "S.S. Wilson", "Comedy"});
    insert(db, "Collections_of_shows", {2, 1988, "S.S. Wilson", "Comedy"});
    insert(db, "Actors", {1, "Ann", "Female", 30, "India"});
    insert(db, "Actors", {2, "Bob", "Male", 40, "USA"});
    insert(db, "Actors", {3, "Cid", "Male", 50, "India"});
    insert(db, "Actor_id-Show_id", {1, 1});
    insert(db, "Actor_id-Show_id", {1, 2});
    insert(db, "Actor_id-Show_id", {3, 1});
    return db;
}

Database two_column_db(const std::vector<Row>& rows, int copies) {
    Database db;
    TableDef t;
    t.name = "T";
    t.columns = {{"id", ColumnType::Int}, {"g", ColumnType::Text}, {"v", ColumnType::Int}, {"d", ColumnType::Decimal}};
    t.primary_key = {"id"};
    db.add_table(t);
    TableDef u;
    u.name = "U";
    u.columns = {{"id", ColumnType::Int}, {"g", ColumnType::Text}, {"w", ColumnType::Int}};
    u.primary_key = {"id"};
    db.add_table(u);
    std::int64_t id = 0;
    for (int c = 0; c < copies; ++c) {
        for (const auto& r : rows) {
            insert(db, "T", {++id, r[0], r[1], r[2]});
            insert(db, "U", {id, r[0], r[1]});
        }
    }
    return db;
}

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("3x3 join against a hand enumeration") {
        auto db = small_db();
        // Actors x junction = 9 pairs; matching Actor_id keeps (Ann,1) (Ann,2) (Cid,1)
        auto rs = oracle_of(db, "SELECT a.`Actor name`, d.Show_id FROM Actors a JOIN `Actor_id-Show_id` d ON a.Actor_id = d.Actor_id");
        std::vector<Row> expected{row_of({"Ann", 1}), row_of({"Ann", 2}), row_of({"Cid", 1})};
        CHECK(same_multiset(rs, ResultSet{rs.headers, expected}));

        auto filtered = oracle_of(db,
                                  "SELECT a.`Actor name`, d.Show_id FROM Actors a JOIN `Actor_id-Show_id` d "
                                  "ON a.Actor_id = d.Actor_id WHERE d.Show_id = 1 ORDER BY a.`Actor name` DESC");
        REQUIRE(filtered.rows.size() == 2);
        CHECK(filtered.rows[0] == row_of({"Cid", 1}));
        CHECK(filtered.rows[1] == row_of({"Ann", 1}));

        auto grouped = oracle_of(db,
                                 "SELECT a.Nationality, COUNT(d.Show_id), SUM(d.Show_id) FROM Actors a JOIN `Actor_id-Show_id` d "
                                 "ON a.Actor_id = d.Actor_id GROUP BY a.Nationality");
        REQUIRE(grouped.rows.size() == 1);
        CHECK(grouped.rows[0] == row_of({"India", 3, 4}));
    }

    TEST_CASE("single-table scan equals storage scan") {
        auto db = random_database(4, builtin_schema(), 50);
        auto rs = oracle_of(db, "SELECT Actor_id, `Actor name`, Gender, Age, Nationality FROM Actors");
        auto rows = scan(db, "Actors");
        CHECK(same_multiset(rs, ResultSet{rs.headers, std::vector<Row>(rows.begin(), rows.end())}));
    }

    TEST_CASE("Q5 on the fixture") {
        auto db = testing::fixture_db();
        auto rs = oracle(db, ottdb::bind(paper_query(5), db));
        REQUIRE_FALSE(rs.rows.empty());
        CHECK(rs.rows[0] == row_of({11, "Three Men of the City", "Forward Media", 1, 5}));
        for (int n = 1; n <= 6; ++n) {
            auto q = ottdb::bind(paper_query(n), db);
            CHECK(same_ordered(oracle(db, q), execute(db, plan(q))));
        }
    }

    TEST_CASE("doubling the rows doubles whole-table aggregates") {
        std::uint64_t state = 77;
        for (int round = 0; round < 20; ++round) {
            std::vector<Row> rows;
            const auto n = next_random(state) % 25;
            for (std::size_t i = 0; i < n; ++i) {
                rows.push_back({std::string(1, static_cast<char>('a' + next_random(state) % 3)),
                                static_cast<std::int64_t>(next_random(state) % 100) - 50,
                                Decimal{static_cast<std::int64_t>(next_random(state) % 5000000)}});
            }
            auto once = two_column_db(rows, 1);
            auto twice = two_column_db(rows, 2);
            const std::string single = "SELECT COUNT(v), SUM(v), SUM(d) FROM T WHERE v > 10";
            auto a = oracle_of(once, single).rows.at(0);
            auto b = oracle_of(twice, single).rows.at(0);
            CHECK(b[0].as_int() == 2 * a[0].as_int());
            CHECK(b[1].as_int() == 2 * a[1].as_int());
            CHECK(b[2].as_decimal().units == 2 * a[2].as_decimal().units);

            // with a self-pairing join each side doubles, so the product quadruples
            const std::string joined = "SELECT COUNT(t.v), SUM(u.w) FROM T t JOIN U u ON t.g = u.g";
            auto c = oracle_of(once, joined).rows.at(0);
            auto d = oracle_of(twice, joined).rows.at(0);
            CHECK(d[0].as_int() == 4 * c[0].as_int());
            CHECK(d[1].as_int() == 4 * c[1].as_int());
        }
    }

    TEST_CASE("oracle honours its deadline") {
        auto db = random_database(8, builtin_schema(), 200);
        auto q = ottdb::bind(paper_query(6), db);
        OracleLimits limits{std::chrono::steady_clock::now() - std::chrono::seconds(1)};
        CHECK_THROWS_AS(oracle(db, q, limits), Error);
    }

    TEST_CASE("query generation is deterministic and always binds") {
        auto schema = builtin_schema();
        auto a = generate_queries(0, schema);
        auto b = generate_queries(0, schema);
        CHECK(a.size() == 500);
        CHECK(a == b);
        CHECK(generate_queries(1, schema) != a);

        std::size_t max_joins = 0, with_order = 0, with_group = 0, max_preds = 0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            for (const auto& q : generate_queries(seed, schema)) {
                BoundQuery bound;
                REQUIRE_NOTHROW(bound = ottdb::bind(q, schema));
                max_joins = std::max(max_joins, bound.joins.size());
                max_preds = std::max(max_preds, bound.where.size());
                with_order += !bound.order_by.empty();
                with_group += !bound.group_by.empty();
            }
        }
        CHECK(max_joins == 6);
        CHECK(max_preds == 4);
        CHECK(with_order > 0);
        CHECK(with_group > 0);
    }

    TEST_CASE("random databases are deterministic and valid") {
        auto schema = builtin_schema();
        auto a = random_database(3, schema, 100);
        auto b = random_database(3, schema, 100);
        CHECK(check_integrity(a).empty());
        for (const auto& t : a.tables()) {
            CHECK(t.store.size() <= 100);
            CHECK(dump_csv(a, t.def.name) == dump_csv(b, t.def.name));
        }
        CHECK(a.total_rows() > 500);
    }
}

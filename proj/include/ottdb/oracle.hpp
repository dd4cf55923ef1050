#pragma once

#include "ottdb/bind.hpp"
#include "ottdb/catalog.hpp"
#include "ottdb/result_set.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ottdb {

struct OracleLimits {
    /// Throws Timeout once passed.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Brute-force evaluation: nested loops over every FROM/JOIN table, each ON and
/// WHERE condition checked once all its tables are bound, grouping by linear
/// search, then the same ordering rule as the engine. Meant for desk-size data.
ResultSet oracle(const Database& db, const BoundQuery& query, OracleLimits limits = {});

/// Deterministic in seed. Every query binds against `schema`: joins follow
/// foreign keys (or two keys referencing the same column), aggregates respect
/// the GROUP BY rule. 0-6 joins, 0-4 predicates, optional GROUP BY / ORDER BY.
std::vector<std::string> generate_queries(std::uint64_t seed, const Database& schema, std::size_t count = 500);

/// Fills every table of `schema` (a copy) with up to max_rows_per_table rows
/// that satisfy all keys, references and row checks.
Database random_database(std::uint64_t seed, const Database& schema, std::size_t max_rows_per_table = 200);

/// Value domain shared by the two generators so predicates select something.
Value random_value(std::uint64_t& state, const ColumnDef& column);

/// splitmix64 step; portable across standard libraries.
std::uint64_t next_random(std::uint64_t& state);

}  // namespace ottdb

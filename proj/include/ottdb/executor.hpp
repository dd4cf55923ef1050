#pragma once

#include "ottdb/catalog.hpp"
#include "ottdb/plan.hpp"
#include "ottdb/result_set.hpp"

#include <span>
#include <vector>

namespace ottdb {

enum class BuildSide { Smaller, Left, Right };

/// Equi-join on one column per side. Output rows are left ++ right, ordered by
/// the probe side, then by build-side insertion order within equal keys.
/// `Smaller` builds on the smaller input (right on ties).
std::vector<Row> hash_join(std::span<const Row> left, std::span<const Row> right, std::size_t left_key,
                           std::size_t right_key, BuildSide build = BuildSide::Smaller);

/// One row per distinct key tuple, in first-seen order; with no keys, exactly
/// one row even for empty input. Throws ArithmeticOverflow.
std::vector<Row> aggregate(std::span<const Row> rows, const std::vector<std::size_t>& group_keys,
                           const std::vector<AggregateSpec>& aggregates);

/// Stable sort by keys, then ascending by the tie_break columns.
std::vector<Row> sort_rows(std::vector<Row> rows, const std::vector<SortKey>& keys,
                           const std::vector<std::size_t>& tie_break);

struct ExecOptions {
    BuildSide build = BuildSide::Smaller;
};

ResultSet execute(const Database& db, const LogicalPlan& plan, ExecOptions options = {});

/// bind + plan + execute
ResultSet run_query(const Database& db, std::string_view sql);

}  // namespace ottdb

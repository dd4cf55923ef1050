#pragma once

#include "ottdb/bind.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace ottdb {

/// Comparison against a literal or another column; indexes are positions in
/// the input row of the operator holding the predicate.
struct PlanPredicate {
    std::size_t lhs = 0;
    sql::CompareOp op = sql::CompareOp::Eq;
    std::variant<Value, std::size_t> rhs;
    std::string text;
};

struct ScanOp {
    std::size_t table = 0;
    std::string table_name;
    std::string alias;
};

struct FilterOp {
    std::vector<PlanPredicate> predicates;
};

/// Output rows are always left columns followed by right columns.
struct HashJoinOp {
    std::size_t left_key = 0;
    std::size_t right_key = 0;
    std::string text;
};

struct AggregateSpec {
    ExprKind kind = ExprKind::Count;
    std::size_t input = 0;
    ColumnType result_type = ColumnType::Int;
    std::string text;
};

/// Output rows: group key values then aggregate values.
struct AggregateOp {
    std::vector<std::size_t> group_keys;
    std::vector<std::string> group_text;
    std::vector<AggregateSpec> aggregates;
};

struct SortKey {
    std::size_t input = 0;
    bool descending = false;
    std::string text;
};

/// Sorts by `keys`, then by the projected row (`tie_break` columns) ascending.
struct SortOp {
    std::vector<SortKey> keys;
    std::vector<std::size_t> tie_break;
};

struct ProjectOp {
    std::vector<std::size_t> outputs;
    std::vector<std::string> headers;
    std::vector<std::string> text;
};

struct PlanNode {
    std::variant<ScanOp, FilterOp, HashJoinOp, AggregateOp, SortOp, ProjectOp> op;
    std::vector<std::unique_ptr<PlanNode>> children;
    /// Names of the columns this node produces, for explain.
    std::vector<std::string> columns;
};

/// Project at the root, optional Sort beneath it, optional Aggregate, then a
/// left-deep HashJoin chain in FROM/JOIN order.
struct LogicalPlan {
    std::unique_ptr<PlanNode> root;
    std::vector<std::string> headers;
};

struct PlanOptions {
    /// When false every WHERE predicate is evaluated in one Filter above the joins.
    bool pushdown = true;
};

LogicalPlan plan(const BoundQuery& query, PlanOptions options = {});

/// Indented operator tree, one node per line.
std::string explain(const LogicalPlan& plan);

}  // namespace ottdb

#include "ottdb/executor.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace ottdb {

namespace {

struct ValueEq {
    bool operator()(const Value& a, const Value& b) const { return compare(a, b) == 0; }
};

bool matches(const Row& row, const std::vector<PlanPredicate>& preds) {
    for (const auto& p : preds) {
        const Value& lhs = row[p.lhs];
        const Value& rhs = std::holds_alternative<Value>(p.rhs) ? std::get<Value>(p.rhs) : row[std::get<std::size_t>(p.rhs)];
        if (!sql::evaluate(p.op, compare(lhs, rhs))) return false;
    }
    return true;
}

Row concat(const Row& a, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

class Executor {
public:
    Executor(const Database& db, ExecOptions options) : db_(db), options_(options) {}

    std::vector<Row> run(const PlanNode& node) {
        return std::visit([&](const auto& op) { return exec(op, node); }, node.op);
    }

private:
    std::vector<Row> exec(const ScanOp& op, const PlanNode&) {
        auto rows = db_.table_at(op.table).store.rows();
        return {rows.begin(), rows.end()};
    }

    std::vector<Row> exec(const FilterOp& op, const PlanNode& node) {
        const PlanNode& child = *node.children[0];
        std::vector<Row> out;
        // Filter directly over a table avoids copying rows that fail.
        if (const auto* scan = std::get_if<ScanOp>(&child.op)) {
            for (const Row& row : db_.table_at(scan->table).store.rows()) {
                if (matches(row, op.predicates)) out.push_back(row);
            }
            return out;
        }
        for (Row& row : run(child)) {
            if (matches(row, op.predicates)) out.push_back(std::move(row));
        }
        return out;
    }

    std::vector<Row> exec(const HashJoinOp& op, const PlanNode& node) {
        auto left = run(*node.children[0]);
        auto right = run(*node.children[1]);
        return hash_join(left, right, op.left_key, op.right_key, options_.build);
    }

    std::vector<Row> exec(const AggregateOp& op, const PlanNode& node) {
        auto input = run(*node.children[0]);
        return aggregate(input, op.group_keys, op.aggregates);
    }

    std::vector<Row> exec(const SortOp& op, const PlanNode& node) {
        return sort_rows(run(*node.children[0]), op.keys, op.tie_break);
    }

    std::vector<Row> exec(const ProjectOp& op, const PlanNode& node) {
        auto input = run(*node.children[0]);
        std::vector<Row> out;
        out.reserve(input.size());
        for (Row& row : input) {
            Row projected;
            projected.reserve(op.outputs.size());
            for (auto i : op.outputs) projected.push_back(row[i]);  // an output may repeat a column, so copy
            out.push_back(std::move(projected));
        }
        return out;
    }

    const Database& db_;
    ExecOptions options_;
};

}  // namespace

std::vector<Row> hash_join(std::span<const Row> left, std::span<const Row> right, std::size_t left_key,
                           std::size_t right_key, BuildSide build) {
    std::vector<Row> out;
    if (left.empty() || right.empty()) return out;
    const bool build_left = build == BuildSide::Left || (build == BuildSide::Smaller && left.size() < right.size());
    const auto build_rows = build_left ? left : right;
    const auto probe_rows = build_left ? right : left;
    const std::size_t build_key = build_left ? left_key : right_key;
    const std::size_t probe_key = build_left ? right_key : left_key;

    std::unordered_map<Value, std::vector<std::size_t>, ValueHash, ValueEq> table;
    table.reserve(build_rows.size());
    for (std::size_t i = 0; i < build_rows.size(); ++i) table[build_rows[i][build_key]].push_back(i);

    for (const Row& probe : probe_rows) {
        auto it = table.find(probe[probe_key]);
        if (it == table.end()) continue;
        for (auto i : it->second) {
            out.push_back(build_left ? concat(build_rows[i], probe) : concat(probe, build_rows[i]));
        }
    }
    return out;
}

std::vector<Row> aggregate(std::span<const Row> rows, const std::vector<std::size_t>& group_keys,
                           const std::vector<AggregateSpec>& aggregates) {
    struct Group {
        Row key;
        std::vector<__int128> acc;
    };
    std::vector<Group> groups;
    std::unordered_map<Row, std::size_t, RowHash, RowEq> index;

    auto new_group = [&](Row key) {
        groups.push_back(Group{std::move(key), std::vector<__int128>(aggregates.size(), 0)});
        return groups.size() - 1;
    };
    if (group_keys.empty()) new_group({});

    for (const Row& row : rows) {
        std::size_t g = 0;
        if (!group_keys.empty()) {
            Row key;
            key.reserve(group_keys.size());
            for (auto k : group_keys) key.push_back(row[k]);
            auto it = index.find(key);
            if (it == index.end()) {
                g = new_group(key);
                index.emplace(std::move(key), g);
            } else {
                g = it->second;
            }
        }
        auto& acc = groups[g].acc;
        for (std::size_t a = 0; a < aggregates.size(); ++a) {
            const auto& spec = aggregates[a];
            if (spec.kind == ExprKind::Count) {
                acc[a] += 1;
                continue;
            }
            const Value& v = row[spec.input];
            // Int and Bool sum as plain integers, Decimal as scaled units.
            acc[a] += v.is_decimal() ? static_cast<__int128>(v.as_decimal().units)
                                     : v.is_bool() ? __int128(v.as_bool() ? 1 : 0) : static_cast<__int128>(v.as_int());
            // Stop long before the 128-bit accumulator itself could wrap.
            if (acc[a] > (__int128(1) << 100) || acc[a] < -(__int128(1) << 100)) {
                throw Error(ErrorCode::ArithmeticOverflow, "overflow in " + spec.text);
            }
        }
    }

    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    std::vector<Row> out;
    out.reserve(groups.size());
    for (auto& g : groups) {
        Row row = std::move(g.key);
        for (std::size_t a = 0; a < aggregates.size(); ++a) {
            const __int128 v = g.acc[a];
            if (v < lo || v > hi) throw Error(ErrorCode::ArithmeticOverflow, "64-bit overflow in " + aggregates[a].text);
            if (aggregates[a].result_type == ColumnType::Decimal) {
                row.emplace_back(Decimal{static_cast<std::int64_t>(v)});
            } else {
                row.emplace_back(static_cast<std::int64_t>(v));
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<Row> sort_rows(std::vector<Row> rows, const std::vector<SortKey>& keys, const std::vector<std::size_t>& tie_break) {
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
        for (const auto& k : keys) {
            auto c = compare(a[k.input], b[k.input]);
            if (c != 0) return k.descending ? c > 0 : c < 0;
        }
        for (auto t : tie_break) {
            auto c = compare(a[t], b[t]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    return rows;
}

ResultSet execute(const Database& db, const LogicalPlan& plan, ExecOptions options) {
    ResultSet out;
    out.headers = plan.headers;
    out.rows = Executor(db, options).run(*plan.root);
    return out;
}

ResultSet run_query(const Database& db, std::string_view sql) { return execute(db, plan(bind(sql, db))); }

}  // namespace ottdb

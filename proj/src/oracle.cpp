#include "ottdb/oracle.hpp"

#include <algorithm>
#include <limits>

namespace ottdb {

namespace {

/// A condition that can be checked once every scope up to `ready_at` is bound.
struct Condition {
    std::size_t ready_at = 0;
    std::size_t lhs_scope = 0;
    std::size_t lhs_column = 0;
    sql::CompareOp op = sql::CompareOp::Eq;
    std::optional<Value> literal;
    std::size_t rhs_scope = 0;
    std::size_t rhs_column = 0;
};

using Tuple = std::vector<const Row*>;

class Oracle {
public:
    Oracle(const Database& db, const BoundQuery& q, OracleLimits limits) : db_(db), q_(q), limits_(limits) {}

    ResultSet run() {
        for (const auto& j : q_.joins) {
            Condition c;
            c.lhs_scope = j.left.scope;
            c.lhs_column = j.left.column;
            c.rhs_scope = j.right.scope;
            c.rhs_column = j.right.column;
            c.ready_at = std::max(c.lhs_scope, c.rhs_scope);
            conditions_.push_back(c);
        }
        for (const auto& p : q_.where) {
            Condition c;
            c.lhs_scope = p.lhs.scope;
            c.lhs_column = p.lhs.column;
            c.op = p.op;
            c.ready_at = c.lhs_scope;
            if (const auto* v = std::get_if<Value>(&p.rhs)) {
                c.literal = *v;
            } else {
                const auto& col = std::get<BoundColumn>(p.rhs);
                c.rhs_scope = col.scope;
                c.rhs_column = col.column;
                c.ready_at = std::max(c.ready_at, c.rhs_scope);
            }
            conditions_.push_back(c);
        }

        Tuple current(q_.scope.size(), nullptr);
        enumerate(0, current);

        ResultSet out;
        out.headers = q_.headers();
        std::vector<std::pair<Row, Row>> keyed;  // (order keys, output row)
        if (q_.grouped) {
            for (const auto& group : group_tuples()) {
                Row output;
                for (const auto& item : q_.select) output.push_back(evaluate(item.expr, group));
                Row keys;
                for (const auto& item : q_.order_by) keys.push_back(evaluate(item.expr, group));
                keyed.emplace_back(std::move(keys), std::move(output));
            }
        } else {
            for (const auto& tuple : matches_) {
                Row output;
                for (const auto& item : q_.select) output.push_back(fetch(tuple, item.expr.column));
                Row keys;
                for (const auto& item : q_.order_by) keys.push_back(fetch(tuple, item.expr.column));
                keyed.emplace_back(std::move(keys), std::move(output));
            }
        }

        if (!q_.order_by.empty()) {
            std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
                for (std::size_t k = 0; k < q_.order_by.size(); ++k) {
                    auto c = compare(a.first[k], b.first[k]);
                    if (c != 0) return q_.order_by[k].descending ? c > 0 : c < 0;
                }
                return compare_rows(a.second, b.second) < 0;
            });
        }
        for (auto& [keys, output] : keyed) out.rows.push_back(std::move(output));
        return out;
    }

private:
    const Value& fetch(const Tuple& t, const BoundColumn& col) const { return (*t[col.scope])[col.column]; }
    const Value& fetch(const Tuple& t, std::size_t scope, std::size_t column) const { return (*t[scope])[column]; }

    void tick() {
        if (limits_.deadline && (++steps_ & 0xFFF) == 1 && std::chrono::steady_clock::now() > *limits_.deadline) {
            throw Error(ErrorCode::Timeout, "oracle deadline exceeded");
        }
    }

    bool holds(const Condition& c, const Tuple& t) const {
        const Value& lhs = fetch(t, c.lhs_scope, c.lhs_column);
        const Value& rhs = c.literal ? *c.literal : fetch(t, c.rhs_scope, c.rhs_column);
        const auto cmp = compare(lhs, rhs);
        switch (c.op) {
            case sql::CompareOp::Eq: return cmp == 0;
            case sql::CompareOp::Ne: return cmp != 0;
            case sql::CompareOp::Lt: return cmp < 0;
            case sql::CompareOp::Le: return cmp <= 0;
            case sql::CompareOp::Gt: return cmp > 0;
            case sql::CompareOp::Ge: return cmp >= 0;
        }
        return false;
    }

    void enumerate(std::size_t depth, Tuple& t) {
        if (depth == q_.scope.size()) {
            matches_.push_back(t);
            return;
        }
        for (const Row& row : db_.table_at(q_.scope[depth].table).store.rows()) {
            tick();
            t[depth] = &row;
            bool ok = true;
            for (const auto& c : conditions_) {
                if (c.ready_at == depth && !holds(c, t)) {
                    ok = false;
                    break;
                }
            }
            if (ok) enumerate(depth + 1, t);
        }
        t[depth] = nullptr;
    }

    std::vector<std::vector<const Tuple*>> group_tuples() {
        std::vector<Row> keys;
        std::vector<std::vector<const Tuple*>> groups;
        if (q_.group_by.empty()) {
            groups.emplace_back();
            for (const auto& t : matches_) groups[0].push_back(&t);
            return groups;
        }
        for (const auto& t : matches_) {
            tick();
            Row key;
            for (const auto& g : q_.group_by) key.push_back(fetch(t, g));
            std::size_t found = keys.size();
            for (std::size_t i = 0; i < keys.size(); ++i) {
                if (compare_rows(keys[i], key) == 0) {
                    found = i;
                    break;
                }
            }
            if (found == keys.size()) {
                keys.push_back(std::move(key));
                groups.emplace_back();
            }
            groups[found].push_back(&t);
        }
        return groups;
    }

    Value evaluate(const BoundExpr& e, const std::vector<const Tuple*>& group) const {
        switch (e.kind) {
            case ExprKind::Column:
                // Grouped column: identical across the group by construction.
                return fetch(*group.front(), e.column);
            case ExprKind::Count:
                return Value(static_cast<std::int64_t>(group.size()));
            case ExprKind::Sum: {
                __int128 total = 0;
                for (const Tuple* t : group) {
                    const Value& v = fetch(*t, e.column);
                    switch (v.type()) {
                        case ColumnType::Int: total += v.as_int(); break;
                        case ColumnType::Decimal: total += v.as_decimal().units; break;
                        case ColumnType::Bool: total += v.as_bool() ? 1 : 0; break;
                        case ColumnType::Text: throw Error(ErrorCode::TypeMismatch, "SUM over text");
                    }
                }
                if (total < std::numeric_limits<std::int64_t>::min() || total > std::numeric_limits<std::int64_t>::max()) {
                    throw Error(ErrorCode::ArithmeticOverflow, "64-bit overflow in " + e.to_string());
                }
                const auto narrow = static_cast<std::int64_t>(total);
                if (e.result_type == ColumnType::Decimal) return Value(Decimal{narrow});
                return Value(narrow);
            }
        }
        return Value();
    }

    const Database& db_;
    const BoundQuery& q_;
    OracleLimits limits_;
    std::vector<Condition> conditions_;
    std::vector<Tuple> matches_;
    std::uint64_t steps_ = 0;
};

}  // namespace

ResultSet oracle(const Database& db, const BoundQuery& query, OracleLimits limits) {
    return Oracle(db, query, limits).run();
}

}  // namespace ottdb

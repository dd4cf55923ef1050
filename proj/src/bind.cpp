#include "ottdb/bind.hpp"

#include <algorithm>
#include <cctype>

namespace ottdb {

namespace {

using sql::ColumnRef;
using sql::Identifier;

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string at(const SourcePos& pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

/// Picks matches per the identifier rules: exact matches win for quoted names,
/// otherwise case-insensitive matches.
template <typename Range, typename NameOf>
std::vector<std::size_t> match(const Range& candidates, const Identifier& id, NameOf name_of) {
    std::vector<std::size_t> exact;
    std::vector<std::size_t> loose;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::string_view name = name_of(candidates[i]);
        if (name == id.name) exact.push_back(i);
        if (iequals(name, id.name)) loose.push_back(i);
    }
    if (id.quoted && !exact.empty()) return exact;
    return loose;
}

class Binder {
public:
    Binder(const sql::QueryAst& ast, const Database& db) : ast_(ast), db_(db) {}

    BoundQuery run() {
        add_scope(ast_.from);
        for (std::size_t j = 0; j < ast_.joins.size(); ++j) {
            const auto& join = ast_.joins[j];
            add_scope(join.table);
            const std::size_t new_scope = q_.scope.size() - 1;
            BoundColumn a = column(join.left);
            BoundColumn b = column(join.right);
            if (a.scope == new_scope && b.scope < new_scope) std::swap(a, b);
            if (!(b.scope == new_scope && a.scope < new_scope)) {
                throw Error(ErrorCode::UnsupportedJoin,
                            at(join.left.column.pos) + ": ON clause must compare " + q_.scope[new_scope].alias +
                                " with a table joined earlier",
                            join.left.column.pos);
            }
            require_comparable(a, b.type, join.left.column.pos);
            q_.joins.push_back(BoundJoin{a, b});
        }

        for (const auto& pred : ast_.where) {
            BoundPredicate bp;
            bp.lhs = column(pred.lhs);
            bp.op = pred.op;
            if (const auto* lit = std::get_if<sql::Literal>(&pred.rhs)) {
                require_comparable(bp.lhs, lit->value.type(), lit->pos);
                bp.rhs = lit->value;
            } else {
                const auto& ref = std::get<ColumnRef>(pred.rhs);
                BoundColumn rhs = column(ref);
                require_comparable(bp.lhs, rhs.type, ref.column.pos);
                bp.rhs = rhs;
            }
            q_.where.push_back(std::move(bp));
        }

        for (const auto& ref : ast_.group_by) q_.group_by.push_back(column(ref));

        bool has_aggregate = false;
        for (const auto& item : ast_.select_items) {
            BoundSelectItem bound{expr(item.expr), item.alias ? *item.alias : sql::display_name(item.expr)};
            has_aggregate = has_aggregate || bound.expr.is_aggregate();
            q_.select.push_back(std::move(bound));
        }
        for (const auto& item : ast_.order_by) {
            BoundOrderItem bound{expr(item.expr), item.descending};
            has_aggregate = has_aggregate || bound.expr.is_aggregate();
            q_.order_by.push_back(std::move(bound));
        }
        q_.grouped = has_aggregate || !q_.group_by.empty();

        if (q_.grouped) {
            auto check = [&](const BoundExpr& e, const sql::Expr& source) {
                if (e.is_aggregate()) return;
                const bool grouped = std::any_of(q_.group_by.begin(), q_.group_by.end(),
                                                 [&](const BoundColumn& g) { return g.same_column(e.column); });
                if (!grouped) {
                    const auto& pos = std::get<ColumnRef>(source).column.pos;
                    throw Error(ErrorCode::UngroupedColumn,
                                at(pos) + ": column " + e.column.name + " must appear in GROUP BY or be aggregated", pos);
                }
            };
            for (std::size_t i = 0; i < q_.select.size(); ++i) check(q_.select[i].expr, ast_.select_items[i].expr);
            for (std::size_t i = 0; i < q_.order_by.size(); ++i) check(q_.order_by[i].expr, ast_.order_by[i].expr);
        }
        return std::move(q_);
    }

private:
    void add_scope(const sql::TableRef& ref) {
        auto idx = resolve_table(db_, ref.table.name, ref.table.quoted);
        if (!idx) {
            throw Error(ErrorCode::UnknownTable, at(ref.table.pos) + ": unknown table " + quote_identifier(ref.table.name),
                        ref.table.pos);
        }
        const Table& t = db_.table_at(*idx);
        ScopeEntry entry;
        entry.table = *idx;
        entry.table_name = t.def.name;
        entry.alias = ref.alias ? ref.alias->name : t.def.name;
        entry.offset = q_.width;
        entry.width = t.def.columns.size();
        for (const auto& existing : q_.scope) {
            if (iequals(existing.alias, entry.alias)) {
                const auto& pos = ref.alias ? ref.alias->pos : ref.table.pos;
                throw Error(ErrorCode::DuplicateAlias, at(pos) + ": " + quote_identifier(entry.alias) + " is already used in FROM",
                            pos);
            }
        }
        q_.width += entry.width;
        q_.scope.push_back(std::move(entry));
    }

    BoundColumn make(std::size_t scope, std::size_t col) const {
        const ScopeEntry& e = q_.scope[scope];
        const ColumnDef& def = db_.table_at(e.table).def.columns[col];
        return BoundColumn{scope, col, e.offset + col, def.type, quote_identifier(e.alias) + "." + quote_identifier(def.name)};
    }

    BoundColumn column(const ColumnRef& ref) const {
        const Identifier& id = ref.column;
        if (ref.qualifier) {
            auto scopes = match(q_.scope, *ref.qualifier, [](const ScopeEntry& e) -> std::string_view { return e.alias; });
            if (scopes.empty()) {
                throw Error(ErrorCode::UnknownTable, at(ref.qualifier->pos) + ": unknown table or alias " +
                                                         quote_identifier(ref.qualifier->name),
                            ref.qualifier->pos);
            }
            const auto& cols = db_.table_at(q_.scope[scopes[0]].table).def.columns;
            auto hits = match(cols, id, [](const ColumnDef& c) -> std::string_view { return c.name; });
            if (hits.empty()) {
                throw Error(ErrorCode::UnknownColumn, at(id.pos) + ": unknown column " + ref.to_sql(), id.pos);
            }
            if (hits.size() > 1) {
                throw Error(ErrorCode::AmbiguousColumn, at(id.pos) + ": " + ref.to_sql() + " matches several columns", id.pos);
            }
            return make(scopes[0], hits[0]);
        }

        std::vector<std::pair<std::size_t, std::size_t>> exact;
        std::vector<std::pair<std::size_t, std::size_t>> loose;
        for (std::size_t s = 0; s < q_.scope.size(); ++s) {
            const auto& cols = db_.table_at(q_.scope[s].table).def.columns;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (cols[c].name == id.name) exact.emplace_back(s, c);
                if (iequals(cols[c].name, id.name)) loose.emplace_back(s, c);
            }
        }
        const auto& hits = id.quoted && !exact.empty() ? exact : loose;
        if (hits.empty()) throw Error(ErrorCode::UnknownColumn, at(id.pos) + ": unknown column " + ref.to_sql(), id.pos);
        if (hits.size() > 1) {
            std::string candidates;
            for (const auto& [s, c] : hits) candidates += (candidates.empty() ? "" : ", ") + make(s, c).name;
            throw Error(ErrorCode::AmbiguousColumn,
                        at(id.pos) + ": column " + ref.to_sql() + " is ambiguous (" + candidates + ")", id.pos);
        }
        return make(hits[0].first, hits[0].second);
    }

    BoundExpr expr(const sql::Expr& e) const {
        if (const auto* agg = std::get_if<sql::Aggregate>(&e)) {
            BoundExpr out;
            out.column = column(agg->arg);
            if (agg->func == sql::AggregateFunc::Count) {
                out.kind = ExprKind::Count;
                out.result_type = ColumnType::Int;
            } else {
                if (!is_numeric(out.column.type)) {
                    throw Error(ErrorCode::TypeMismatch, at(agg->pos) + ": SUM needs a numeric column, " + out.column.name + " is TEXT",
                                agg->pos);
                }
                out.kind = ExprKind::Sum;
                out.result_type = out.column.type == ColumnType::Decimal ? ColumnType::Decimal : ColumnType::Int;
            }
            return out;
        }
        BoundExpr out;
        out.kind = ExprKind::Column;
        out.column = column(std::get<ColumnRef>(e));
        out.result_type = out.column.type;
        return out;
    }

    void require_comparable(const BoundColumn& lhs, ColumnType rhs, const SourcePos& pos) const {
        if (!comparable(lhs.type, rhs)) {
            throw Error(ErrorCode::TypeMismatch,
                        at(pos) + ": cannot compare " + lhs.name + " (" + std::string(ottdb::to_string(lhs.type)) + ") with " +
                            std::string(ottdb::to_string(rhs)),
                        pos);
        }
    }

    const sql::QueryAst& ast_;
    const Database& db_;
    BoundQuery q_;
};

}  // namespace

std::string BoundExpr::to_string() const {
    switch (kind) {
        case ExprKind::Column: return column.name;
        case ExprKind::Count: return "COUNT(" + column.name + ")";
        case ExprKind::Sum: return "SUM(" + column.name + ")";
    }
    return {};
}

std::string BoundPredicate::to_string() const {
    std::string out = lhs.name + " " + std::string(sql::to_string(op)) + " ";
    if (const auto* v = std::get_if<Value>(&rhs)) {
        out += v->is_text() ? "'" + v->to_string() + "'" : v->to_string();
    } else {
        out += std::get<BoundColumn>(rhs).name;
    }
    return out;
}

std::vector<std::string> BoundQuery::headers() const {
    std::vector<std::string> out;
    for (const auto& item : select) out.push_back(item.header);
    return out;
}

std::optional<std::size_t> resolve_table(const Database& db, std::string_view name, bool quoted) {
    auto tables = db.tables();
    auto hits = match(tables, Identifier{std::string(name), quoted, {}},
                      [](const Table& t) -> std::string_view { return t.def.name; });
    if (hits.size() != 1) return std::nullopt;
    return hits[0];
}

BoundQuery bind(const sql::QueryAst& ast, const Database& db) { return Binder(ast, db).run(); }

BoundQuery bind(std::string_view text, const Database& db) { return bind(sql::parse(text), db); }

}  // namespace ottdb

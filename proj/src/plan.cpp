#include "ottdb/plan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ottdb {

namespace {

using NodePtr = std::unique_ptr<PlanNode>;

NodePtr make_node(decltype(PlanNode::op) op, std::vector<std::string> columns) {
    auto node = std::make_unique<PlanNode>();
    node->op = std::move(op);
    node->columns = std::move(columns);
    return node;
}

NodePtr wrap(decltype(PlanNode::op) op, NodePtr child) {
    auto columns = child->columns;
    auto node = make_node(std::move(op), std::move(columns));
    node->children.push_back(std::move(child));
    return node;
}

/// Scope entries a predicate touches.
std::set<std::size_t> scopes_of(const BoundPredicate& p) {
    std::set<std::size_t> out{p.lhs.scope};
    if (const auto* col = std::get_if<BoundColumn>(&p.rhs)) out.insert(col->scope);
    return out;
}

/// Translates a bound predicate into one over a row whose first column is at
/// global slot `base` (scan filters use their scope's offset, joins use 0).
PlanPredicate translate(const BoundPredicate& p, std::size_t base) {
    PlanPredicate out;
    out.lhs = p.lhs.slot - base;
    out.op = p.op;
    if (const auto* v = std::get_if<Value>(&p.rhs)) {
        out.rhs = *v;
    } else {
        out.rhs = std::get<BoundColumn>(p.rhs).slot - base;
    }
    out.text = p.to_string();
    return out;
}

}  // namespace

LogicalPlan plan(const BoundQuery& q, PlanOptions options) {
    const std::size_t n = q.scope.size();

    // Column names of every scope, in concatenated order.
    std::vector<std::vector<std::string>> scope_columns(n);
    std::vector<std::string> all_columns(q.width);
    auto note = [&](const BoundColumn& c) { all_columns[c.slot] = c.name; };
    for (const auto& s : q.select) note(s.expr.column);
    for (const auto& j : q.joins) {
        note(j.left);
        note(j.right);
    }
    for (const auto& p : q.where) {
        note(p.lhs);
        if (const auto* c = std::get_if<BoundColumn>(&p.rhs)) note(*c);
    }
    for (const auto& g : q.group_by) note(g);
    for (const auto& o : q.order_by) note(o.expr.column);
    for (std::size_t s = 0; s < n; ++s) {
        const auto& e = q.scope[s];
        for (std::size_t c = 0; c < e.width; ++c) {
            auto& name = all_columns[e.offset + c];
            if (name.empty()) name = quote_identifier(e.alias) + ".#" + std::to_string(c);
            scope_columns[s].push_back(name);
        }
    }

    // Assign predicates: single-scope ones go to that scope's scan, the rest
    // right after the join that brings in their last scope.
    std::vector<std::vector<PlanPredicate>> scan_filters(n);
    std::vector<std::vector<PlanPredicate>> join_filters(n);
    std::vector<PlanPredicate> top_filter;
    for (const auto& p : q.where) {
        if (!options.pushdown) {
            top_filter.push_back(translate(p, 0));
            continue;
        }
        auto scopes = scopes_of(p);
        if (scopes.size() == 1) {
            const auto s = *scopes.begin();
            scan_filters[s].push_back(translate(p, q.scope[s].offset));
        } else {
            join_filters[*scopes.rbegin()].push_back(translate(p, 0));
        }
    }

    auto scan = [&](std::size_t s) {
        const auto& e = q.scope[s];
        NodePtr node = make_node(ScanOp{e.table, e.table_name, e.alias}, scope_columns[s]);
        if (!scan_filters[s].empty()) node = wrap(FilterOp{scan_filters[s]}, std::move(node));
        return node;
    };

    NodePtr cur = scan(0);
    for (std::size_t j = 0; j < q.joins.size(); ++j) {
        const auto& join = q.joins[j];
        NodePtr right = scan(j + 1);
        std::vector<std::string> columns = cur->columns;
        columns.insert(columns.end(), right->columns.begin(), right->columns.end());
        HashJoinOp op{join.left.slot, join.right.column, join.left.name + " = " + join.right.name};
        NodePtr node = make_node(op, std::move(columns));
        node->children.push_back(std::move(cur));
        node->children.push_back(std::move(right));
        cur = std::move(node);
        if (!join_filters[j + 1].empty()) cur = wrap(FilterOp{join_filters[j + 1]}, std::move(cur));
    }
    if (!top_filter.empty()) cur = wrap(FilterOp{top_filter}, std::move(cur));

    // Where each select / order expression lives in the row feeding Sort and Project.
    auto position_of = [&](const BoundExpr& e) -> std::size_t { return e.column.slot; };
    std::vector<std::size_t> select_pos;
    std::vector<std::size_t> order_pos;

    if (q.grouped) {
        AggregateOp agg;
        std::vector<BoundColumn> keys;
        for (const auto& g : q.group_by) {
            if (std::none_of(keys.begin(), keys.end(), [&](const BoundColumn& k) { return k.same_column(g); })) {
                keys.push_back(g);
                agg.group_keys.push_back(g.slot);
                agg.group_text.push_back(g.name);
            }
        }
        std::vector<BoundExpr> aggs;
        auto locate = [&](const BoundExpr& e) -> std::size_t {
            if (!e.is_aggregate()) {
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    if (keys[k].same_column(e.column)) return k;
                }
                return 0;  // unreachable: binder rejects ungrouped columns
            }
            for (std::size_t a = 0; a < aggs.size(); ++a) {
                if (aggs[a].same_expr(e)) return keys.size() + a;
            }
            aggs.push_back(e);
            agg.aggregates.push_back(AggregateSpec{e.kind, e.column.slot, e.result_type, e.to_string()});
            return keys.size() + aggs.size() - 1;
        };
        for (const auto& s : q.select) select_pos.push_back(locate(s.expr));
        for (const auto& o : q.order_by) order_pos.push_back(locate(o.expr));

        std::vector<std::string> columns = agg.group_text;
        for (const auto& a : agg.aggregates) columns.push_back(a.text);
        NodePtr node = make_node(std::move(agg), std::move(columns));
        node->children.push_back(std::move(cur));
        cur = std::move(node);
    } else {
        for (const auto& s : q.select) select_pos.push_back(position_of(s.expr));
        for (const auto& o : q.order_by) order_pos.push_back(position_of(o.expr));
    }

    if (!q.order_by.empty()) {
        SortOp sort;
        for (std::size_t i = 0; i < q.order_by.size(); ++i) {
            sort.keys.push_back(SortKey{order_pos[i], q.order_by[i].descending, q.order_by[i].expr.to_string()});
        }
        sort.tie_break = select_pos;
        cur = wrap(std::move(sort), std::move(cur));
    }

    ProjectOp project;
    project.outputs = select_pos;
    for (const auto& s : q.select) {
        project.headers.push_back(s.header);
        project.text.push_back(s.expr.to_string());
    }
    LogicalPlan out;
    out.headers = project.headers;
    out.root = make_node(std::move(project), out.headers);
    out.root->children.push_back(std::move(cur));
    return out;
}

namespace {

std::string join_text(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out;
}

void render(std::ostream& out, const PlanNode& node, int depth) {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    std::visit(
        [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, ScanOp>) {
                out << "Scan " << quote_identifier(op.table_name);
                if (op.alias != op.table_name) out << " AS " << op.alias;
            } else if constexpr (std::is_same_v<T, FilterOp>) {
                std::vector<std::string> parts;
                for (const auto& p : op.predicates) parts.push_back(p.text);
                out << "Filter [" << join_text(parts) << "]";
            } else if constexpr (std::is_same_v<T, HashJoinOp>) {
                out << "HashJoin [" << op.text << "]";
            } else if constexpr (std::is_same_v<T, AggregateOp>) {
                std::vector<std::string> aggs;
                for (const auto& a : op.aggregates) aggs.push_back(a.text);
                out << "Aggregate group=[" << join_text(op.group_text) << "] aggregates=[" << join_text(aggs) << "]";
            } else if constexpr (std::is_same_v<T, SortOp>) {
                std::vector<std::string> keys;
                for (const auto& k : op.keys) keys.push_back(k.text + (k.descending ? " DESC" : " ASC"));
                out << "Sort [" << join_text(keys) << "] then output row";
            } else if constexpr (std::is_same_v<T, ProjectOp>) {
                out << "Project [" << join_text(op.text) << "]";
            }
        },
        node.op);
    out << '\n';
    for (const auto& child : node.children) render(out, *child, depth + 1);
}

}  // namespace

std::string explain(const LogicalPlan& plan) {
    std::ostringstream out;
    if (plan.root) render(out, *plan.root, 0);
    return out.str();
}

}  // namespace ottdb

#pragma once

#include "ottdb/value.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ottdb {

struct ResultSet {
    std::vector<std::string> headers;
    std::vector<Row> rows;

    /// Headers, a rule, pipe-separated rows padded per column, and "(N rows)".
    std::string to_table() const;
    /// Same CSV dialect as dump_csv.
    std::string to_csv() const;
};

/// Order-insensitive equality; values must match in type and payload.
bool same_multiset(const ResultSet& a, const ResultSet& b);

/// Row-by-row equality with the same value rule.
bool same_ordered(const ResultSet& a, const ResultSet& b);

}  // namespace ottdb

#include "ottdb/result_set.hpp"

#include "ottdb/csv.hpp"

#include <algorithm>
#include <sstream>

namespace ottdb {

namespace {

/// Display width in code points; the fixture is UTF-8.
std::size_t width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

void pad(std::ostream& out, const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = width(s); i < w; ++i) out << ' ';
}

bool identical_rows(const Row& a, const Row& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const Value& x, const Value& y) { return identical(x, y); });
}

}  // namespace

std::string ResultSet::to_table() const {
    std::vector<std::size_t> widths;
    for (const auto& h : headers) widths.push_back(width(h));
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(row[i].to_string());
            if (i < widths.size()) widths[i] = std::max(widths[i], width(line.back()));
        }
        cells.push_back(std::move(line));
    }

    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) out << " | ";
            if (i + 1 == line.size()) {
                out << line[i];
            } else {
                pad(out, line[i], widths[i]);
            }
        }
        out << '\n';
    };
    emit(headers);
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i) out << "-+-";
        out << std::string(widths[i], '-');
    }
    out << '\n';
    for (const auto& line : cells) emit(line);
    out << '(' << rows.size() << (rows.size() == 1 ? " row)" : " rows)") << '\n';
    return out.str();
}

std::string ResultSet::to_csv() const {
    std::ostringstream out;
    write_csv_record(out, headers, false);
    for (const auto& row : rows) {
        std::vector<std::string> fields;
        for (const auto& v : row) fields.push_back(v.to_string());
        write_csv_record(out, fields, true);
    }
    return out.str();
}

bool same_multiset(const ResultSet& a, const ResultSet& b) {
    if (a.headers != b.headers || a.rows.size() != b.rows.size()) return false;
    auto less = [](const Row& x, const Row& y) { return compare_rows(x, y) < 0; };
    auto x = a.rows;
    auto y = b.rows;
    std::sort(x.begin(), x.end(), less);
    std::sort(y.begin(), y.end(), less);
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), identical_rows);
}

bool same_ordered(const ResultSet& a, const ResultSet& b) {
    return a.headers == b.headers && std::equal(a.rows.begin(), a.rows.end(), b.rows.begin(), b.rows.end(), identical_rows);
}

}  // namespace ottdb

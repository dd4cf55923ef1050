#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ottdb {

/// One logical CSV record; `line` is where it starts (1-based).
struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Comma-delimited, double-quote quoting with "" escapes, records may span lines
/// inside quotes. Blank lines are skipped. Throws MalformedCsv.
std::vector<CsvRecord> parse_csv(std::istream& in);

/// Writes one record terminated by '\n'. With quote_empty, empty fields are
/// written as "" so a lone empty field is not mistaken for a blank line.
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields, bool quote_empty);

}  // namespace ottdb

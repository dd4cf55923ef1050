#include "ottdb/csv.hpp"

#include "ottdb/error.hpp"

#include <istream>
#include <iterator>
#include <ostream>

namespace ottdb {

std::vector<CsvRecord> parse_csv(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<CsvRecord> records;

    std::size_t i = 0;
    std::size_t line = 1;
    const std::size_t n = text.size();
    while (i < n) {
        // blank line
        if (text[i] == '\n' || (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
            i += text[i] == '\r' ? 2 : 1;
            ++line;
            continue;
        }
        CsvRecord rec;
        rec.line = line;
        std::string field;
        bool done = false;
        while (!done) {
            field.clear();
            if (i < n && text[i] == '"') {
                const std::size_t open_line = line;
                ++i;
                bool closed = false;
                while (i < n) {
                    char c = text[i];
                    if (c == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        closed = true;
                        break;
                    }
                    if (c == '\n') ++line;
                    field += c;
                    ++i;
                }
                if (!closed) {
                    throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(open_line) + ": unterminated quoted field",
                                SourcePos{open_line, 1, 0});
                }
                if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": text after closing quote",
                                SourcePos{line, 1, 0});
                }
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n' && !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
                    if (text[i] == '"') {
                        throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": stray quote in unquoted field",
                                    SourcePos{line, 1, 0});
                    }
                    field += text[i];
                    ++i;
                }
            }
            rec.fields.push_back(field);
            if (i >= n) {
                done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                i += text[i] == '\r' ? 2 : 1;
                ++line;
                done = true;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields, bool quote_empty) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const auto& f = fields[i];
        const bool needs_quotes = (quote_empty && f.empty()) || f.find_first_of(",\"\r\n") != std::string::npos;
        if (!needs_quotes) {
            out << f;
            continue;
        }
        out << '"';
        for (char c : f) {
            if (c == '"') out << '"';
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

}  // namespace ottdb

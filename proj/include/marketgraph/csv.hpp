#pragma once

#include <string>
#include <vector>

namespace marketgraph {

struct CsvRow {
    int line = 0;  // 1-based line in the source file where the row starts
    std::vector<std::string> fields;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

/// RFC 4180 style: comma separated, double-quote quoting with "" escapes,
/// quoted fields may contain commas and newlines, LF or CRLF line ends, a
/// UTF-8 BOM is stripped. The first row is the header. Blank lines are
/// skipped. Throws MalformedRecord for an unterminated quote or a stray
/// quote inside an unquoted field.
CsvTable parse_csv(const std::string& text);

/// One field, quoted only when it needs to be.
std::string csv_field(const std::string& value);

/// Join fields into one CSV line (no trailing newline).
std::string csv_line(const std::vector<std::string>& fields);

/// Whole-file helpers. Both throw IoFailure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace marketgraph
